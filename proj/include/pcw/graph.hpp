#pragma once

// Directed-graph core: rooted digraphs with arc costs and node penalties,
// out-arborescences, and the prize-collecting cost.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcw {

using NodeId = int;
using ArcId = int;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Bad caller-supplied data (malformed instance, out-of-range argument).
class InputError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The requested object cannot exist (unreachable node, budget below the
// direct distance).
class InfeasibleError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Arc {
  NodeId tail = 0;
  NodeId head = 0;
  double cost = 0.0;
};

// Rooted digraph. Parallel arcs are allowed; reductions collapse them.
struct Digraph {
  NodeId node_count = 0;
  std::vector<Arc> arcs;
  NodeId root = 0;

  void validate() const {
    if (node_count <= 0) throw InputError("digraph: node_count must be positive");
    if (root < 0 || root >= node_count) throw InputError("digraph: root out of range");
    for (const Arc& a : arcs) {
      if (a.tail < 0 || a.tail >= node_count || a.head < 0 || a.head >= node_count)
        throw InputError("digraph: arc endpoint out of range");
      if (!(a.cost >= 0.0) || !std::isfinite(a.cost))
        throw InputError("digraph: arc costs must be finite and nonnegative");
    }
  }

  double max_arc_cost() const {
    double m = 0.0;
    for (const Arc& a : arcs) m = std::max(m, a.cost);
    return m;
  }
};

// Prize-collecting-walks instance. node_labels maps every surviving node to
// the set of original nodes it stands for (identity at the top level; unions
// under contraction). pi[root] is ignored by all computations.
struct PcwInstance {
  Digraph graph;
  std::vector<double> penalties;
  std::vector<std::vector<NodeId>> node_labels;

  static PcwInstance with_identity_labels(Digraph g, std::vector<double> pi) {
    PcwInstance inst;
    inst.graph = std::move(g);
    inst.penalties = std::move(pi);
    inst.graph.validate();
    if (static_cast<NodeId>(inst.penalties.size()) != inst.graph.node_count)
      throw InputError("pcw instance: penalty vector size mismatch");
    for (NodeId v = 0; v < inst.graph.node_count; ++v) {
      if (!(inst.penalties[v] >= 0.0) || !std::isfinite(inst.penalties[v]))
        throw InputError("pcw instance: penalties must be finite and nonnegative");
      inst.node_labels.push_back({v});
    }
    return inst;
  }

  // Absolute tolerance for zero tests after penalty/cost subtraction.
  double zero_tolerance() const {
    return 1e-9 * std::max(1.0, graph.max_arc_cost());
  }
};

// r-rooted out-tree: every covered node except the root has exactly one
// incoming arc.
struct Arborescence {
  NodeId root = 0;
  std::vector<ArcId> parent_arc;  // per node, -1 for the root and uncovered nodes
  std::vector<char> covered;      // covered[root] is always true

  static Arborescence empty(NodeId n, NodeId root) {
    Arborescence t;
    t.root = root;
    t.parent_arc.assign(n, -1);
    t.covered.assign(n, 0);
    t.covered[root] = 1;
    return t;
  }

  int covered_count() const {
    int k = 0;
    for (char c : covered) k += (c != 0);
    return k;
  }

  double cost(const Digraph& g) const {
    double total = 0.0;
    for (NodeId v = 0; v < static_cast<NodeId>(parent_arc.size()); ++v)
      if (parent_arc[v] >= 0) total += g.arcs[parent_arc[v]].cost;
    return total;
  }

  std::vector<NodeId> covered_nodes() const {
    std::vector<NodeId> out;
    for (NodeId v = 0; v < static_cast<NodeId>(covered.size()); ++v)
      if (covered[v]) out.push_back(v);
    return out;
  }
};

// Structural check: one incoming arc per covered non-root node, arcs stay
// inside the covered set, and every covered node reaches the root by parent
// steps (no cycles).
inline void validate_arborescence(const Arborescence& t, const Digraph& g) {
  const NodeId n = g.node_count;
  if (static_cast<NodeId>(t.parent_arc.size()) != n ||
      static_cast<NodeId>(t.covered.size()) != n || t.root != g.root)
    throw InputError("arborescence: shape mismatch with digraph");
  if (!t.covered[t.root] || t.parent_arc[t.root] != -1)
    throw InputError("arborescence: root must be covered and parentless");
  for (NodeId v = 0; v < n; ++v) {
    if (v == t.root) continue;
    if (t.covered[v] != (t.parent_arc[v] >= 0))
      throw InputError("arborescence: covered non-root nodes need exactly one incoming arc");
    if (t.parent_arc[v] >= 0) {
      const ArcId a = t.parent_arc[v];
      if (a >= static_cast<ArcId>(g.arcs.size()) || g.arcs[a].head != v || !t.covered[g.arcs[a].tail])
        throw InputError("arborescence: parent arc inconsistent at node " + std::to_string(v));
    }
  }
  for (NodeId v = 0; v < n; ++v) {
    if (!t.covered[v]) continue;
    NodeId u = v;
    int steps = 0;
    while (u != t.root) {
      u = g.arcs[t.parent_arc[u]].tail;
      if (++steps > n) throw InputError("arborescence: parent chain contains a cycle");
    }
  }
}

// PCC(T) = c(T) + pi(uncovered nodes), root penalty ignored.
inline double prize_collecting_cost(const Arborescence& t, const PcwInstance& inst) {
  validate_arborescence(t, inst.graph);
  double total = t.cost(inst.graph);
  for (NodeId v = 0; v < inst.graph.node_count; ++v)
    if (!t.covered[v] && v != inst.graph.root) total += inst.penalties[v];
  return total;
}

}  // namespace pcw
