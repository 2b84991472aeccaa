#pragma once

// Prize-collecting walks core: iterative instance simplification producing an
// out-arborescence T together with a certificate vector y whose total Y
// satisfies PCC(T) <= Y <= (optimal prize-collecting walk value).
//
// One round subtracts, per non-root node, the largest common value theta_v
// that keeps its incoming arc costs and its penalty nonnegative. Afterwards
// every non-root node has either a zero penalty (the node can be shortcut
// past) or a zero-cost incoming arc (so either a zero cycle can be contracted
// or a zero spanning arborescence exists).

#include <map>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "pcw/arborescence.hpp"
#include "pcw/graph.hpp"

namespace pcw {

// Sparse lower-bound certificate over sets of original nodes.
struct Certificate {
  std::vector<std::pair<std::vector<NodeId>, double>> entries;
  double total = 0.0;
};

struct ThetaVector {
  std::vector<double> theta;  // per node; theta[root] == 0

  double sum() const {
    double s = 0.0;
    for (double t : theta) s += t;
    return s;
  }
};

// How a reduced arc relates to the pre-reduction instance.
struct ArcOrigin {
  ArcId direct = -1;   // pre-reduction arc, or -1 for a two-hop composite
  ArcId via_in = -1;   // composite: arc into the removed node
  ArcId via_out = -1;  // composite: arc out of the removed node

  bool composite() const { return direct < 0; }
};

struct ShortcutTrace {
  NodeId removed = -1;                  // node id in the pre-reduction instance
  std::vector<NodeId> node_of_reduced;  // reduced node id -> pre-reduction id
  std::vector<ArcOrigin> arc_origin;    // per reduced arc
};

struct ContractTrace {
  std::vector<ArcId> cycle_arcs;        // the contracted zero cycle, pre-reduction ids
  std::vector<NodeId> cycle_nodes;
  NodeId supernode = -1;                // reduced id of the contracted node
  std::vector<NodeId> node_of_reduced;  // reduced id -> pre-reduction id (-1 for supernode)
  std::vector<ArcId> arc_origin;        // per reduced arc: the pre-reduction arc whose cost it carries
};

using ReductionTrace = std::variant<ShortcutTrace, ContractTrace>;

struct ZeroPenaltyNode {
  NodeId node;
};
struct ZeroCycle {
  std::vector<ArcId> arcs;  // directed cycle of zero-cost arcs, root not touched
};
struct ZeroArborescence {
  Arborescence tree;
};
using Classification = std::variant<ZeroPenaltyNode, ZeroCycle, ZeroArborescence>;

namespace detail {

// Cheapest arc per ordered pair; ties by lower arc index.
struct PairMin {
  std::vector<double> cost;
  std::vector<ArcId> arc;
  NodeId n = 0;

  explicit PairMin(const Digraph& g) : n(g.node_count) {
    cost.assign(static_cast<std::size_t>(n) * n, kInf);
    arc.assign(static_cast<std::size_t>(n) * n, -1);
    for (ArcId a = 0; a < static_cast<ArcId>(g.arcs.size()); ++a) {
      const Arc& e = g.arcs[a];
      std::size_t k = static_cast<std::size_t>(e.tail) * n + e.head;
      if (e.cost < cost[k]) {
        cost[k] = e.cost;
        arc[k] = a;
      }
    }
  }

  double at(NodeId u, NodeId v) const { return cost[static_cast<std::size_t>(u) * n + v]; }
  ArcId arc_at(NodeId u, NodeId v) const { return arc[static_cast<std::size_t>(u) * n + v]; }
};

inline double clamp_zero(double x, double tau, const char* what) {
  if (x < -tau) throw std::logic_error(std::string("pcw: negative value after subtraction in ") + what);
  return (x <= tau) ? 0.0 : x;
}

ThetaVector subtract_theta_in_place(PcwInstance& inst, double tau);

}  // namespace detail

// ---- Reduction operations ----

// Subtracts theta_v = min(min incoming cost of v, pi_v) from v's incoming
// arcs and penalty, for every non-root v. Afterwards each non-root node has
// zero penalty or a zero-cost incoming arc.
inline ThetaVector detail::subtract_theta_in_place(PcwInstance& inst, double tau) {
  const Digraph& g = inst.graph;
  ThetaVector th;
  th.theta.assign(g.node_count, 0.0);
  std::vector<double> min_in(g.node_count, kInf);
  for (const Arc& a : g.arcs)
    if (a.cost < min_in[a.head]) min_in[a.head] = a.cost;
  for (NodeId v = 0; v < g.node_count; ++v) {
    if (v == g.root) continue;
    th.theta[v] = std::min(min_in[v], inst.penalties[v]);
  }

  for (Arc& a : inst.graph.arcs) {
    if (a.head == g.root) continue;
    a.cost = detail::clamp_zero(a.cost - th.theta[a.head], tau, "arc cost");
  }
  for (NodeId v = 0; v < g.node_count; ++v)
    inst.penalties[v] =
        (v == g.root) ? 0.0 : detail::clamp_zero(inst.penalties[v] - th.theta[v], tau, "penalty");
  return th;
}

inline std::pair<PcwInstance, ThetaVector> subtract_theta(const PcwInstance& inst) {
  PcwInstance out = inst;
  ThetaVector th = detail::subtract_theta_in_place(out, inst.zero_tolerance());
  return {std::move(out), std::move(th)};
}

// Classifies a theta-reduced instance: a zero-penalty node (lowest id) wins;
// otherwise one zero-cost incoming arc is selected per non-root node (lowest
// tail, then lowest arc index) and the selection either contains a cycle
// (which cannot touch the root) or is a zero-cost spanning arborescence.
inline Classification classify(const PcwInstance& inst, double tau) {
  const Digraph& g = inst.graph;
  for (NodeId v = 0; v < g.node_count; ++v)
    if (v != g.root && inst.penalties[v] <= tau) return ZeroPenaltyNode{v};

  std::vector<ArcId> selected(g.node_count, -1);
  for (ArcId a = 0; a < static_cast<ArcId>(g.arcs.size()); ++a) {
    const Arc& e = g.arcs[a];
    if (e.head == g.root || e.cost > tau) continue;
    ArcId& cur = selected[e.head];
    if (cur < 0 || e.tail < g.arcs[cur].tail) cur = a;
  }
  for (NodeId v = 0; v < g.node_count; ++v)
    if (v != g.root && selected[v] < 0)
      throw std::logic_error("pcw: node " + std::to_string(v) +
                             " has positive penalty and no zero-cost incoming arc");

  std::vector<int> mark(g.node_count, -1);
  for (NodeId start = 0; start < g.node_count; ++start) {
    NodeId u = start;
    while (u != g.root && mark[u] < 0) {
      mark[u] = start;
      u = g.arcs[selected[u]].tail;
    }
    if (u == g.root || mark[u] != start) continue;
    // Walk the cycle forward from its lowest-id node.
    std::vector<NodeId> cyc_nodes;
    NodeId v = u;
    do {
      cyc_nodes.push_back(v);
      v = g.arcs[selected[v]].tail;
    } while (v != u);
    NodeId first = *std::min_element(cyc_nodes.begin(), cyc_nodes.end());
    // cyc_nodes is in backward order (node, its parent, ...); reverse it so
    // consecutive entries follow arc direction, then rotate to `first`.
    std::reverse(cyc_nodes.begin(), cyc_nodes.end());
    auto it = std::find(cyc_nodes.begin(), cyc_nodes.end(), first);
    std::rotate(cyc_nodes.begin(), it, cyc_nodes.end());
    ZeroCycle z;
    for (std::size_t i = 0; i < cyc_nodes.size(); ++i)
      z.arcs.push_back(selected[cyc_nodes[(i + 1) % cyc_nodes.size()]]);
    return z;
  }

  Arborescence t = Arborescence::empty(g.node_count, g.root);
  for (NodeId v = 0; v < g.node_count; ++v)
    if (v != g.root) {
      t.parent_arc[v] = selected[v];
      t.covered[v] = 1;
    }
  return ZeroArborescence{std::move(t)};
}

inline Classification classify(const PcwInstance& inst) {
  return classify(inst, inst.zero_tolerance());
}

// Removes a zero-penalty node v, connecting each in-neighbour u to each
// out-neighbour w at the cheaper of the direct and the two-hop cost. Only
// finite-cost arcs are materialized and no arcs into the root are created.
inline std::pair<PcwInstance, ShortcutTrace> shortcut_node(const PcwInstance& inst, NodeId v) {
  const Digraph& g = inst.graph;
  if (v == g.root || v < 0 || v >= g.node_count) throw InputError("shortcut_node: bad node");

  detail::PairMin pm(g);
  ShortcutTrace trace;
  trace.removed = v;
  trace.arc_origin.reserve(static_cast<std::size_t>(g.node_count) * g.node_count);
  std::vector<NodeId> reduced_of_node(g.node_count, -1);
  for (NodeId u = 0; u < g.node_count; ++u)
    if (u != v) {
      reduced_of_node[u] = static_cast<NodeId>(trace.node_of_reduced.size());
      trace.node_of_reduced.push_back(u);
    }

  PcwInstance out;
  out.graph.node_count = g.node_count - 1;
  out.graph.root = reduced_of_node[g.root];
  out.graph.arcs.reserve(static_cast<std::size_t>(out.graph.node_count) * out.graph.node_count);
  const bool with_labels = !inst.node_labels.empty();
  for (NodeId u : trace.node_of_reduced) {
    out.penalties.push_back(inst.penalties[u]);
    if (with_labels) out.node_labels.push_back(inst.node_labels[u]);
  }
  for (NodeId u = 0; u < g.node_count; ++u) {
    if (u == v) continue;
    const double into_v = pm.at(u, v);
    const ArcId into_v_arc = pm.arc_at(u, v);
    const NodeId ru = reduced_of_node[u];
    for (NodeId w = 0; w < g.node_count; ++w) {
      if (w == v || w == u) continue;
      const double direct = pm.at(u, w);
      double via = kInf;
      if (w != g.root) via = into_v + pm.at(v, w);
      const double best = std::min(direct, via);
      if (best == kInf) continue;
      ArcOrigin origin;
      if (via < direct) {
        origin.via_in = into_v_arc;
        origin.via_out = pm.arc_at(v, w);
      } else {
        origin.direct = pm.arc_at(u, w);
      }
      out.graph.arcs.push_back({ru, reduced_of_node[w], best});
      trace.arc_origin.push_back(origin);
    }
  }
  return {std::move(out), std::move(trace)};
}

// Contracts a zero-cost cycle into a supernode carrying the summed penalty
// and the union of member labels. Entering/leaving arc costs are the minima
// over the cycle boundary; the attaining pre-reduction arc is recorded.
inline std::pair<PcwInstance, ContractTrace> contract_cycle(const PcwInstance& inst,
                                                            const std::vector<ArcId>& cycle,
                                                            double tau) {
  const Digraph& g = inst.graph;
  if (cycle.empty()) throw InputError("contract_cycle: empty cycle");
  std::vector<char> in_cycle(g.node_count, 0);
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    const Arc& a = g.arcs.at(cycle[i]);
    const Arc& next = g.arcs.at(cycle[(i + 1) % cycle.size()]);
    if (a.cost > tau) throw InputError("contract_cycle: cycle arc has nonzero cost");
    if (a.head != next.tail) throw InputError("contract_cycle: arcs do not form a cycle");
    if (a.head == g.root || a.tail == g.root) throw InputError("contract_cycle: cycle touches root");
    in_cycle[a.head] = 1;
  }

  ContractTrace trace;
  trace.cycle_arcs = cycle;
  std::vector<NodeId> reduced_of_node(g.node_count, -1);
  for (NodeId u = 0; u < g.node_count; ++u)
    if (!in_cycle[u]) {
      reduced_of_node[u] = static_cast<NodeId>(trace.node_of_reduced.size());
      trace.node_of_reduced.push_back(u);
    } else {
      trace.cycle_nodes.push_back(u);
    }
  trace.supernode = static_cast<NodeId>(trace.node_of_reduced.size());
  trace.node_of_reduced.push_back(-1);

  PcwInstance out;
  out.graph.node_count = trace.supernode + 1;
  out.graph.root = reduced_of_node[g.root];
  const bool with_labels = !inst.node_labels.empty();
  double super_penalty = 0.0;
  std::vector<NodeId> super_label;
  for (NodeId u : trace.cycle_nodes) {
    super_penalty += inst.penalties[u];
    if (with_labels)
      super_label.insert(super_label.end(), inst.node_labels[u].begin(), inst.node_labels[u].end());
  }
  std::sort(super_label.begin(), super_label.end());
  for (NodeId u = 0; u < g.node_count; ++u)
    if (!in_cycle[u]) {
      out.penalties.push_back(inst.penalties[u]);
      if (with_labels) out.node_labels.push_back(inst.node_labels[u]);
    }
  out.penalties.push_back(super_penalty);
  if (with_labels) out.node_labels.push_back(std::move(super_label));

  // Cheapest representative per reduced ordered pair, ties by arc index.
  const NodeId rn = out.graph.node_count;
  out.graph.arcs.reserve(static_cast<std::size_t>(rn) * rn);
  trace.arc_origin.reserve(static_cast<std::size_t>(rn) * rn);
  std::vector<ArcId> best(static_cast<std::size_t>(rn) * rn, -1);
  auto consider = [&](NodeId t, NodeId h, ArcId a) {
    if (t == h) return;
    ArcId& cur = best[static_cast<std::size_t>(t) * rn + h];
    if (cur < 0 || g.arcs[a].cost < g.arcs[cur].cost) cur = a;
  };
  for (ArcId a = 0; a < static_cast<ArcId>(g.arcs.size()); ++a) {
    const Arc& e = g.arcs[a];
    const bool tc = in_cycle[e.tail], hc = in_cycle[e.head];
    if (tc && hc) continue;
    const NodeId t = tc ? trace.supernode : reduced_of_node[e.tail];
    const NodeId h = hc ? trace.supernode : reduced_of_node[e.head];
    if (tc && h == out.graph.root) continue;  // no supernode -> root arcs
    consider(t, h, a);
  }
  for (NodeId t = 0; t < rn; ++t)
    for (NodeId h = 0; h < rn; ++h) {
      const ArcId a = best[static_cast<std::size_t>(t) * rn + h];
      if (a < 0) continue;
      out.graph.arcs.push_back({t, h, g.arcs[a].cost});
      trace.arc_origin.push_back(a);
    }
  return {std::move(out), std::move(trace)};
}

inline std::pair<PcwInstance, ContractTrace> contract_cycle(const PcwInstance& inst,
                                                            const std::vector<ArcId>& cycle) {
  return contract_cycle(inst, cycle, inst.zero_tolerance());
}

namespace detail {

// Runs Edmonds on the given pre-instance arcs and translates back.
inline Arborescence rebuild_min_arborescence(const PcwInstance& pre, std::vector<ArcId> arc_ids) {
  std::sort(arc_ids.begin(), arc_ids.end());
  arc_ids.erase(std::unique(arc_ids.begin(), arc_ids.end()), arc_ids.end());
  Digraph sub;
  sub.node_count = pre.graph.node_count;
  sub.root = pre.graph.root;
  std::vector<char> node_in(pre.graph.node_count, 0);
  node_in[pre.graph.root] = 1;
  for (ArcId a : arc_ids) {
    sub.arcs.push_back(pre.graph.arcs[a]);
    node_in[pre.graph.arcs[a].tail] = 1;
    node_in[pre.graph.arcs[a].head] = 1;
  }
  std::vector<NodeId> subset;
  for (NodeId v = 0; v < pre.graph.node_count; ++v)
    if (node_in[v]) subset.push_back(v);
  Arborescence local = min_cost_arborescence(sub, subset);
  Arborescence out = Arborescence::empty(pre.graph.node_count, pre.graph.root);
  for (NodeId v = 0; v < pre.graph.node_count; ++v) {
    if (local.parent_arc[v] >= 0) {
      out.parent_arc[v] = arc_ids[local.parent_arc[v]];
      out.covered[v] = 1;
    }
  }
  return out;
}

}  // namespace detail

// Lifts an arborescence of the reduced instance back to the pre-reduction
// instance; see the shortcut/contract cases in the class comment.
inline Arborescence lift_tree(const ReductionTrace& trace, const Arborescence& reduced_tree,
                              const PcwInstance& pre_inst) {
  if (const auto* sc = std::get_if<ShortcutTrace>(&trace)) {
    if (reduced_tree.parent_arc.size() != sc->node_of_reduced.size())
      throw InputError("lift_tree: tree does not match shortcut trace");
    std::vector<ArcId> arcs;
    for (NodeId v = 0; v < static_cast<NodeId>(reduced_tree.parent_arc.size()); ++v) {
      const ArcId a = reduced_tree.parent_arc[v];
      if (a < 0) continue;
      if (a >= static_cast<ArcId>(sc->arc_origin.size()))
        throw InputError("lift_tree: tree arc outside trace");
      const ArcOrigin& o = sc->arc_origin[a];
      if (o.composite()) {
        arcs.push_back(o.via_in);
        arcs.push_back(o.via_out);
      } else {
        arcs.push_back(o.direct);
      }
    }
    return detail::rebuild_min_arborescence(pre_inst, std::move(arcs));
  }

  const auto& ct = std::get<ContractTrace>(trace);
  if (reduced_tree.parent_arc.size() != ct.node_of_reduced.size())
    throw InputError("lift_tree: tree does not match contract trace");
  if (!reduced_tree.covered[ct.supernode]) {
    // The contracted cycle stays uncovered: translate arcs one to one.
    Arborescence out = Arborescence::empty(pre_inst.graph.node_count, pre_inst.graph.root);
    for (NodeId v = 0; v < static_cast<NodeId>(reduced_tree.parent_arc.size()); ++v) {
      const ArcId a = reduced_tree.parent_arc[v];
      if (a < 0) continue;
      const ArcId orig = ct.arc_origin.at(a);
      out.parent_arc[pre_inst.graph.arcs[orig].head] = orig;
      out.covered[pre_inst.graph.arcs[orig].head] = 1;
    }
    return out;
  }
  std::vector<ArcId> arcs;
  for (NodeId v = 0; v < static_cast<NodeId>(reduced_tree.parent_arc.size()); ++v) {
    const ArcId a = reduced_tree.parent_arc[v];
    if (a >= 0) arcs.push_back(ct.arc_origin.at(a));
  }
  arcs.insert(arcs.end(), ct.cycle_arcs.begin(), ct.cycle_arcs.end());
  return detail::rebuild_min_arborescence(pre_inst, std::move(arcs));
}

struct PcwResult {
  Arborescence tree;
  Certificate certificate;
};

namespace detail {

using CertificateMap = std::map<std::vector<NodeId>, double>;

inline void trace_line(std::ostream* log, const std::string& line) {
  if (log) *log << line << '\n';
}

// One accumulator threaded through the recursion: deeper levels only ever
// add entries keyed by original-node label sets. `ymap` may be null when the
// caller needs just the total (the label plumbing is skipped then). The
// instance is taken by value and theta-reduced in place.
inline Arborescence pcw_rec(PcwInstance inst, double tau, std::ostream* log, CertificateMap* ymap,
                            double& y_total) {
  const Digraph& g = inst.graph;
  const NodeId r = g.root;

  if (g.node_count == 1) {
    trace_line(log, "base n=1");
    return Arborescence::empty(1, r);
  }
  if (g.node_count == 2) {
    const NodeId v = 1 - r;
    double crv = kInf;
    ArcId best = -1;
    for (ArcId a = 0; a < static_cast<ArcId>(g.arcs.size()); ++a)
      if (g.arcs[a].head == v && g.arcs[a].cost < crv) {
        crv = g.arcs[a].cost;
        best = a;
      }
    const double yv = std::min(crv, inst.penalties[v]);
    if (yv > 0.0) {
      y_total += yv;
      if (ymap) (*ymap)[inst.node_labels[v]] += yv;
    }
    Arborescence t = Arborescence::empty(2, r);
    if (inst.penalties[v] > crv) {
      t.parent_arc[v] = best;
      t.covered[v] = 1;
    }
    trace_line(log, "base n=2");
    return t;
  }

  ThetaVector theta = detail::subtract_theta_in_place(inst, tau);
  Classification cls = classify(inst, tau);
  Arborescence tree;

  if (const auto* zp = std::get_if<ZeroPenaltyNode>(&cls)) {
    trace_line(log, "shortcut node=" + std::to_string(zp->node));
    auto [reduced, trace] = shortcut_node(inst, zp->node);
    Arborescence sub = pcw_rec(std::move(reduced), tau, log, ymap, y_total);
    tree = lift_tree(ReductionTrace{std::move(trace)}, sub, inst);
  } else if (const auto* zc = std::get_if<ZeroCycle>(&cls)) {
    trace_line(log, "contract cycle_len=" + std::to_string(zc->arcs.size()));
    auto [reduced, trace] = contract_cycle(inst, zc->arcs, tau);
    Arborescence sub = pcw_rec(std::move(reduced), tau, log, ymap, y_total);
    tree = lift_tree(ReductionTrace{std::move(trace)}, sub, inst);
  } else {
    trace_line(log, "zero-cost spanning arborescence");
    tree = std::move(std::get<ZeroArborescence>(cls).tree);
  }

  for (NodeId v = 0; v < g.node_count; ++v)
    if (v != r && theta.theta[v] > 0.0) {
      y_total += theta.theta[v];
      if (ymap) (*ymap)[inst.node_labels[v]] += theta.theta[v];
    }
  return tree;
}

inline void validate_pcw_input(const PcwInstance& inst, bool with_labels) {
  inst.graph.validate();
  if (static_cast<NodeId>(inst.penalties.size()) != inst.graph.node_count ||
      (with_labels && static_cast<NodeId>(inst.node_labels.size()) != inst.graph.node_count))
    throw InputError("pcw_arborescence: instance field sizes disagree");
  for (double p : inst.penalties)
    if (!(p >= 0.0) || !std::isfinite(p)) throw InputError("pcw_arborescence: negative penalty");
}

}  // namespace detail

// Main entry point. The optional log receives one line per reduction.
inline PcwResult pcw_arborescence(const PcwInstance& inst, std::ostream* log = nullptr) {
  detail::validate_pcw_input(inst, true);
  detail::CertificateMap ymap;
  double unused = 0.0;
  PcwResult res;
  res.tree = detail::pcw_rec(inst, inst.zero_tolerance(), log, &ymap, unused);
  for (auto& [set, value] : ymap) {
    res.certificate.total += value;
    res.certificate.entries.emplace_back(set, value);
  }
  return res;
}

// Tree plus certificate total only; skips the per-set bookkeeping. Used by
// the Lagrangian searches, which consume only Y.
inline std::pair<Arborescence, double> pcw_arborescence_value(const PcwInstance& inst) {
  detail::validate_pcw_input(inst, false);
  double total = 0.0;
  Arborescence tree = detail::pcw_rec(inst, inst.zero_tolerance(), nullptr, nullptr, total);
  return {std::move(tree), total};
}

}  // namespace pcw
