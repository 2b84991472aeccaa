#pragma once

// Dense symmetric cost matrix with zero diagonal, plus helpers shared by the
// Lagrangian searches, the orienteering solvers, and the TSPLIB loader.

#include <cmath>
#include <cstddef>
#include <vector>

#include "pcw/graph.hpp"

namespace pcw {

struct CostMatrix {
  NodeId n = 0;
  std::vector<double> d;  // row-major, n*n

  CostMatrix() = default;
  explicit CostMatrix(NodeId nodes) : n(nodes), d(static_cast<std::size_t>(nodes) * nodes, 0.0) {}

  double operator()(NodeId u, NodeId v) const { return d[static_cast<std::size_t>(u) * n + v]; }
  double& at(NodeId u, NodeId v) { return d[static_cast<std::size_t>(u) * n + v]; }

  void set_symmetric(NodeId u, NodeId v, double cost) {
    at(u, v) = cost;
    at(v, u) = cost;
  }

  void validate_symmetric() const {
    if (n <= 0) throw InputError("cost matrix: empty");
    for (NodeId u = 0; u < n; ++u) {
      if ((*this)(u, u) != 0.0) throw InputError("cost matrix: nonzero diagonal");
      for (NodeId v = 0; v < n; ++v) {
        const double c = (*this)(u, v);
        if (!(c >= 0.0) || !std::isfinite(c)) throw InputError("cost matrix: bad entry");
        if (c != (*this)(v, u)) throw InputError("cost matrix: not symmetric");
      }
    }
  }

  // True if some triple violates the triangle inequality beyond tolerance.
  bool violates_triangle(double tol = 1e-9) const {
    for (NodeId u = 0; u < n; ++u)
      for (NodeId w = 0; w < n; ++w)
        for (NodeId v = 0; v < n; ++v)
          if ((*this)(u, v) > (*this)(u, w) + (*this)(w, v) + tol) return true;
    return false;
  }

  double max_cost() const {
    double m = 0.0;
    for (double c : d) m = std::max(m, c);
    return m;
  }

  double path_cost(const std::vector<NodeId>& seq) const {
    double c = 0.0;
    for (std::size_t i = 1; i < seq.size(); ++i) c += (*this)(seq[i - 1], seq[i]);
    return c;
  }

  static CostMatrix from_points(const std::vector<std::pair<double, double>>& pts) {
    CostMatrix m(static_cast<NodeId>(pts.size()));
    for (NodeId u = 0; u < m.n; ++u)
      for (NodeId v = u + 1; v < m.n; ++v) {
        const double dx = pts[u].first - pts[v].first;
        const double dy = pts[u].second - pts[v].second;
        m.set_symmetric(u, v, std::sqrt(dx * dx + dy * dy));
      }
    return m;
  }
};

// Bidirected digraph over a node subset: both directions of every pair get
// the symmetric cost. Node ids are positions in `nodes`.
inline Digraph bidirect(const CostMatrix& c, const std::vector<NodeId>& nodes, NodeId root_global) {
  Digraph g;
  g.node_count = static_cast<NodeId>(nodes.size());
  g.root = -1;
  for (NodeId i = 0; i < g.node_count; ++i)
    if (nodes[i] == root_global) g.root = i;
  if (g.root < 0) throw InputError("bidirect: root not in node set");
  for (NodeId i = 0; i < g.node_count; ++i)
    for (NodeId j = 0; j < g.node_count; ++j)
      if (i != j) g.arcs.push_back({i, j, c(nodes[i], nodes[j])});
  return g;
}

}  // namespace pcw
