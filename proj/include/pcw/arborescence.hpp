#pragma once

// Minimum-cost spanning arborescence (Chu-Liu/Edmonds) over a node subset.

#include <algorithm>
#include <string>
#include <vector>

#include "pcw/graph.hpp"

namespace pcw {

namespace detail {

struct EdmondsArc {
  double cost;   // reduced cost at the current contraction level
  NodeId tail;   // representative ids at the current level
  NodeId head;
  ArcId orig;    // arc id in the caller's digraph

  // Equal-cost ties go to the lower original tail id, then lower arc index.
  bool better_than(const EdmondsArc& o, const Digraph& g) const {
    if (cost != o.cost) return cost < o.cost;
    if (g.arcs[orig].tail != g.arcs[o.orig].tail) return g.arcs[orig].tail < g.arcs[o.orig].tail;
    return orig < o.orig;
  }
};

struct EdmondsLevel {
  std::vector<EdmondsArc> arcs;      // arc list at this level, ascending orig
  std::vector<detail::EdmondsArc> selected;
  std::vector<NodeId> cycle;         // contracted representatives; empty at the last level
  std::vector<NodeId> rep_to_next;   // representative here -> representative one level down
  NodeId supernode = -1;             // next-level id of the contracted cycle
};

inline NodeId head_at_level(const EdmondsLevel& level, ArcId orig) {
  auto it = std::lower_bound(level.arcs.begin(), level.arcs.end(), orig,
                             [](const EdmondsArc& a, ArcId o) { return a.orig < o; });
  return it->head;
}

}  // namespace detail

// Returns the cheapest arborescence rooted at g.root spanning exactly
// node_subset (which must contain the root). Throws InfeasibleError naming a
// node that cannot be reached inside the subset.
inline Arborescence min_cost_arborescence(const Digraph& g, const std::vector<NodeId>& node_subset) {
  g.validate();
  std::vector<char> in_subset(g.node_count, 0);
  bool has_root = false;
  for (NodeId v : node_subset) {
    if (v < 0 || v >= g.node_count) throw InputError("min_cost_arborescence: node out of range");
    in_subset[v] = 1;
    has_root = has_root || (v == g.root);
  }
  if (!has_root) throw InputError("min_cost_arborescence: subset must contain the root");

  // Compact representative ids for the first level.
  std::vector<NodeId> rep_of_node(g.node_count, -1);
  std::vector<NodeId> witness;  // representative -> some original node, for error messages
  for (NodeId v = 0; v < g.node_count; ++v)
    if (in_subset[v]) {
      rep_of_node[v] = static_cast<NodeId>(witness.size());
      witness.push_back(v);
    }
  NodeId root_rep = rep_of_node[g.root];
  int node_count = static_cast<int>(witness.size());

  std::vector<detail::EdmondsArc> arcs;
  for (ArcId a = 0; a < static_cast<ArcId>(g.arcs.size()); ++a) {
    const Arc& arc = g.arcs[a];
    if (!in_subset[arc.tail] || !in_subset[arc.head] || arc.tail == arc.head) continue;
    arcs.push_back({arc.cost, rep_of_node[arc.tail], rep_of_node[arc.head], a});
  }

  std::vector<detail::EdmondsLevel> levels;
  while (true) {
    detail::EdmondsLevel level;
    level.arcs = arcs;
    level.selected.assign(node_count, detail::EdmondsArc{kInf, -1, -1, -1});
    for (const detail::EdmondsArc& a : arcs) {
      if (a.head == root_rep) continue;
      detail::EdmondsArc& best = level.selected[a.head];
      if (best.orig < 0 || a.better_than(best, g)) best = a;
    }
    for (NodeId v = 0; v < node_count; ++v)
      if (v != root_rep && level.selected[v].orig < 0)
        throw InfeasibleError("min_cost_arborescence: node " + std::to_string(witness[v]) +
                              " is unreachable from the root");

    // Walk the selection's functional graph looking for a cycle.
    std::vector<int> mark(node_count, -1);
    for (NodeId start = 0; start < node_count && level.cycle.empty(); ++start) {
      NodeId u = start;
      while (u != root_rep && mark[u] < 0) {
        mark[u] = start;
        u = level.selected[u].tail;
      }
      if (u != root_rep && mark[u] == start) {
        NodeId v = u;
        do {
          level.cycle.push_back(v);
          v = level.selected[v].tail;
        } while (v != u);
      }
    }
    if (level.cycle.empty()) {
      levels.push_back(std::move(level));
      break;
    }

    // Contract the cycle; arcs entering it get reduced costs.
    std::vector<char> in_cycle(node_count, 0);
    for (NodeId v : level.cycle) in_cycle[v] = 1;
    level.rep_to_next.assign(node_count, -1);
    int next_count = 0;
    for (NodeId v = 0; v < node_count; ++v)
      if (!in_cycle[v]) level.rep_to_next[v] = next_count++;
    level.supernode = next_count++;
    for (NodeId v : level.cycle) level.rep_to_next[v] = level.supernode;

    std::vector<NodeId> next_witness(next_count, -1);
    for (NodeId v = 0; v < node_count; ++v)
      if (next_witness[level.rep_to_next[v]] < 0) next_witness[level.rep_to_next[v]] = witness[v];

    std::vector<detail::EdmondsArc> next_arcs;
    for (const detail::EdmondsArc& a : arcs) {
      const NodeId t = level.rep_to_next[a.tail], h = level.rep_to_next[a.head];
      if (t == h) continue;
      double cost = a.cost;
      if (in_cycle[a.head]) cost -= level.selected[a.head].cost;
      next_arcs.push_back({cost, t, h, a.orig});
    }

    root_rep = level.rep_to_next[root_rep];
    node_count = next_count;
    arcs = std::move(next_arcs);
    witness = std::move(next_witness);
    levels.push_back(std::move(level));
  }

  // Expand contractions from the innermost level outward.
  std::vector<ArcId> chosen;
  for (const detail::EdmondsArc& a : levels.back().selected)
    if (a.orig >= 0) chosen.push_back(a.orig);
  for (int li = static_cast<int>(levels.size()) - 2; li >= 0; --li) {
    const detail::EdmondsLevel& level = levels[li];
    // The supernode is never the root, so the spanning solution one level
    // down has exactly one arc entering it; its head inside the cycle keeps
    // that arc and the rest of the cycle keeps its zero-reduced selection.
    NodeId entered_head = -1;
    for (ArcId orig : chosen) {
      const NodeId h = detail::head_at_level(level, orig);
      if (level.rep_to_next[h] == level.supernode) {
        entered_head = h;
        break;
      }
    }
    for (NodeId v : level.cycle)
      if (v != entered_head) chosen.push_back(level.selected[v].orig);
  }

  Arborescence result = Arborescence::empty(g.node_count, g.root);
  for (ArcId orig : chosen) {
    result.parent_arc[g.arcs[orig].head] = orig;
    result.covered[g.arcs[orig].head] = 1;
  }
  validate_arborescence(result, g);
  return result;
}

}  // namespace pcw
