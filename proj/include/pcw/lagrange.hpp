#pragma once

// Binary-search wrappers around the prize-collecting arborescence: tune the
// multiplier lambda on node penalties until the tree meets a cost budget
// (budget search) or covers an exact node count (coverage search), returning
// a distribution over at most two trees.

#include <cfloat>
#include <functional>
#include <map>
#include <vector>

#include "pcw/metric.hpp"
#include "pcw/pcw_arborescence.hpp"

namespace pcw {

enum class Termination { Practical, Theory, Exact };

struct SearchConfig {
  double epsilon = 0.01;
  Termination termination = Termination::Practical;
  double cost_denominator = 1.0;  // M: costs are integer multiples of 1/M (exact mode)
};

// One evaluated multiplier: the tree, its cost, coverage, and certificate
// total Y(lambda), all expressed over the caller's global node ids.
struct LambdaProbe {
  double lambda = 0.0;
  double tree_cost = 0.0;
  int covered_count = 0;
  double certificate_total = 0.0;  // Y(lambda)
  std::vector<NodeId> covered;     // sorted global ids, root included
  std::vector<std::pair<NodeId, NodeId>> tree_arcs;  // global (tail, head)
};

struct TreeDistribution {
  struct Atom {
    double weight = 0.0;
    std::size_t probe = 0;  // index into `probes`
  };
  std::vector<Atom> atoms;         // one or two entries
  std::vector<LambdaProbe> probes; // every lambda evaluated, in search order

  double weighted_cost() const {
    double c = 0.0;
    for (const Atom& a : atoms) c += a.weight * probes[a.probe].tree_cost;
    return c;
  }
  double weighted_coverage() const {
    double k = 0.0;
    for (const Atom& a : atoms) k += a.weight * probes[a.probe].covered_count;
    return k;
  }
  double weighted_reward(const std::vector<double>& rewards) const {
    double r = 0.0;
    for (const Atom& a : atoms) {
      double rew = 0.0;
      for (NodeId v : probes[a.probe].covered) rew += rewards[v];
      r += a.weight * rew;
    }
    return r;
  }
};

// Evaluates (and memoizes) the prize-collecting arborescence at a given
// lambda over the bidirected restriction of the metric to a node set. The
// probe store is shared when several searches run in the same context.
class TreeProber {
 public:
  enum class Penalties {
    ScaledRewards,  // pi(lambda) = lambda*reward, mandatory node pinned at n*c_max
    Uniform         // pi(lambda) = lambda at every node
  };

  TreeProber(const CostMatrix& metric, std::vector<NodeId> nodes, NodeId root_global,
             NodeId mandatory_global, const std::vector<double>* rewards, Penalties mode)
      : nodes_(std::move(nodes)), rewards_(rewards), mode_(mode) {
    graph_ = bidirect(metric, nodes_, root_global);
    mandatory_local_ = -1;
    for (NodeId i = 0; i < graph_.node_count; ++i)
      if (nodes_[i] == mandatory_global) mandatory_local_ = i;
    if (mandatory_global >= 0 && mandatory_local_ < 0)
      throw InputError("tree prober: mandatory node not in node set");
    c_max_ = 0.0;
    for (const Arc& a : graph_.arcs) c_max_ = std::max(c_max_, a.cost);
    mandatory_reach_ = (mandatory_local_ >= 0) ? shortest_from_root(mandatory_local_) : 0.0;
  }

  std::size_t probe(double lambda) {
    auto it = by_lambda_.find(lambda);
    if (it != by_lambda_.end()) return it->second;

    const NodeId n = graph_.node_count;
    std::vector<double> pi(n, 0.0);
    for (NodeId i = 0; i < n; ++i) {
      if (mode_ == Penalties::Uniform)
        pi[i] = lambda;
      else
        pi[i] = (i == mandatory_local_) ? n * c_max_ : lambda * (*rewards_)[nodes_[i]];
    }
    PcwInstance inst;
    inst.graph = graph_;
    inst.penalties = std::move(pi);
    auto [tree, y_total] = pcw_arborescence_value(inst);

    LambdaProbe p;
    p.lambda = lambda;
    p.tree_cost = tree.cost(graph_);
    p.certificate_total = y_total;
    for (NodeId i = 0; i < n; ++i) {
      if (tree.covered[i]) p.covered.push_back(nodes_[i]);
      if (tree.parent_arc[i] >= 0) {
        const Arc& a = graph_.arcs[tree.parent_arc[i]];
        p.tree_arcs.push_back({nodes_[a.tail], nodes_[a.head]});
      }
    }
    p.covered_count = static_cast<int>(p.covered.size());
    probes_.push_back(std::move(p));
    by_lambda_[lambda] = probes_.size() - 1;
    return probes_.size() - 1;
  }

  const LambdaProbe& at(std::size_t i) const { return probes_[i]; }
  const std::vector<LambdaProbe>& probes() const { return probes_; }
  double max_cost() const { return c_max_; }
  NodeId size() const { return graph_.node_count; }
  const std::vector<NodeId>& nodes() const { return nodes_; }

  // Cheapest way any tree in this context can attach the mandatory node:
  // its shortest-path distance from the root inside the node set. Equals the
  // direct distance whenever the triangle inequality holds.
  double mandatory_reach() const { return mandatory_reach_; }

  // Zero-cost metric corner: a star over `count` nodes is an optimal tree at
  // any lambda (one tie-break of the algorithm), used directly by the
  // searches instead of bisecting a degenerate interval.
  std::size_t star_probe(int count) {
    const NodeId n = graph_.node_count;
    LambdaProbe p;
    p.covered.push_back(nodes_[graph_.root]);
    for (NodeId i = 0; i < n && static_cast<int>(p.covered.size()) < count; ++i) {
      if (i == graph_.root) continue;
      p.covered.push_back(nodes_[i]);
      p.tree_arcs.push_back({nodes_[graph_.root], nodes_[i]});
    }
    std::sort(p.covered.begin(), p.covered.end());
    p.covered_count = static_cast<int>(p.covered.size());
    probes_.push_back(std::move(p));
    return probes_.size() - 1;
  }

 private:
  double shortest_from_root(NodeId target) const {
    const NodeId n = graph_.node_count;
    std::vector<double> dist(n, kInf);
    std::vector<char> done(n, 0);
    dist[graph_.root] = 0.0;
    for (;;) {
      NodeId best = -1;
      for (NodeId i = 0; i < n; ++i)
        if (!done[i] && dist[i] < kInf && (best < 0 || dist[i] < dist[best])) best = i;
      if (best < 0) break;
      done[best] = 1;
      for (const Arc& a : graph_.arcs)
        if (a.tail == best) dist[a.head] = std::min(dist[a.head], dist[best] + a.cost);
    }
    return dist[target];
  }

  std::vector<NodeId> nodes_;
  const std::vector<double>* rewards_;
  Penalties mode_;
  Digraph graph_;
  NodeId mandatory_local_ = -1;
  double c_max_ = 0.0;
  double mandatory_reach_ = 0.0;
  std::vector<LambdaProbe> probes_;
  std::map<double, std::size_t> by_lambda_;
};

// Observer invoked after every probe; returning false abandons the search.
using ProbeObserver = std::function<bool(std::size_t probe_index)>;

namespace detail {

struct SearchResult {
  std::vector<TreeDistribution::Atom> atoms;  // probe indices into the prober
  std::vector<std::size_t> encountered;       // probe order for this search
  bool aborted = false;
};

inline double width_floor(double width, double high) {
  return std::max(width, 4.0 * DBL_EPSILON * std::max(1.0, high));
}

// Bisection over the tree cost against budget L. Keeps cost(lambda1) < L <
// cost(lambda2); a probe hitting L exactly ends the search with one atom.
inline SearchResult budget_search(TreeProber& prober, double budget, double low, double high,
                                  double width, const ProbeObserver& observer) {
  SearchResult out;
  auto eval = [&](double lambda) {
    std::size_t i = prober.probe(lambda);
    out.encountered.push_back(i);
    if (observer && !observer(i)) out.aborted = true;
    return i;
  };

  const std::size_t hi = eval(high);
  if (prober.at(hi).tree_cost <= budget) {
    out.atoms = {{1.0, hi}};
    return out;
  }
  if (out.aborted) return out;

  std::size_t lo = eval(low);
  // With integral costs c(T_low) <= L always holds; with real costs the
  // bracket can miss by a whisker, and shrinking lambda restores it. The
  // tree cost tends to the root-mandatory shortest-path distance, so when
  // the budget sits exactly on that distance the bracket may only be met up
  // to rounding; such a tree is then returned as the single atom.
  for (int guard = 0; prober.at(lo).tree_cost > budget && !out.aborted; ++guard) {
    if (guard > 60) {
      if (prober.at(lo).tree_cost <= budget + 1e-9 * std::max(1.0, budget)) {
        out.atoms = {{1.0, lo}};
        return out;
      }
      throw std::logic_error("budget search: no lower bracket");
    }
    low /= 2.0;
    lo = eval(low);
  }
  if (prober.at(lo).tree_cost == budget) {
    out.atoms = {{1.0, lo}};
    return out;
  }

  double l1 = low, l2 = high;
  std::size_t i1 = lo, i2 = hi;
  while (l2 - l1 > width && !out.aborted) {
    const double mid = l1 + (l2 - l1) / 2.0;
    if (mid <= l1 || mid >= l2) break;  // interval below double resolution
    const std::size_t im = eval(mid);
    const double c = prober.at(im).tree_cost;
    if (c == budget) {
      out.atoms = {{1.0, im}};
      return out;
    }
    if (c < budget) {
      l1 = mid;
      i1 = im;
    } else {
      l2 = mid;
      i2 = im;
    }
  }
  if (out.aborted) return out;
  const double c1 = prober.at(i1).tree_cost, c2 = prober.at(i2).tree_cost;
  const double a = (c2 - budget) / (c2 - c1);
  out.atoms = {{a, i1}, {1.0 - a, i2}};
  return out;
}

// Bisection over the covered node count against the target k.
inline SearchResult coverage_search(TreeProber& prober, int k, double width,
                                    const ProbeObserver& observer) {
  SearchResult out;
  auto eval = [&](double lambda) {
    std::size_t i = prober.probe(lambda);
    out.encountered.push_back(i);
    if (observer && !observer(i)) out.aborted = true;
    return i;
  };

  const double high = prober.size() * prober.max_cost();
  const std::size_t lo = eval(0.0);
  if (prober.at(lo).covered_count == k) {
    out.atoms = {{1.0, lo}};
    return out;
  }
  if (out.aborted) return out;
  const std::size_t hi = eval(high);
  if (prober.at(hi).covered_count == k) {
    out.atoms = {{1.0, hi}};
    return out;
  }
  if (prober.at(lo).covered_count > k || prober.at(hi).covered_count < k)
    throw std::logic_error("coverage search: bracket does not contain k");

  double l1 = 0.0, l2 = high;
  std::size_t i1 = lo, i2 = hi;
  while (l2 - l1 > width && !out.aborted) {
    const double mid = l1 + (l2 - l1) / 2.0;
    if (mid <= l1 || mid >= l2) break;
    const std::size_t im = eval(mid);
    const int c = prober.at(im).covered_count;
    if (c == k) {
      out.atoms = {{1.0, im}};
      return out;
    }
    if (c < k) {
      l1 = mid;
      i1 = im;
    } else {
      l2 = mid;
      i2 = im;
    }
  }
  if (out.aborted) return out;
  const double k1 = prober.at(i1).covered_count, k2 = prober.at(i2).covered_count;
  const double a = (k2 - k) / (k2 - k1);
  out.atoms = {{a, i1}, {1.0 - a, i2}};
  return out;
}

inline TreeDistribution materialize(const TreeProber& prober, const SearchResult& res) {
  TreeDistribution dist;
  dist.probes = prober.probes();
  for (const auto& atom : res.atoms) dist.atoms.push_back({atom.weight, atom.probe});
  return dist;
}

}  // namespace detail

// LB parameter of the budget search: the largest reward among nodes that fit
// a rooted path through w within the budget; 0 when no node qualifies.
inline double reward_lower_bound(const std::vector<NodeId>& nodes, const CostMatrix& metric,
                                 const std::vector<double>& rewards, double budget, NodeId root,
                                 NodeId mandatory) {
  double lb = 0.0;
  for (NodeId u : nodes)
    if (std::min(metric(root, u), metric(root, mandatory)) + metric(u, mandatory) <= budget)
      lb = std::max(lb, rewards[u]);
  return lb;
}

namespace detail {

inline double budget_width(const SearchConfig& cfg, double low, double lb, double c_max,
                           double high) {
  double width = 1e-6;
  if (cfg.termination == Termination::Theory) width = cfg.epsilon * low * low * lb;
  if (cfg.termination == Termination::Exact) width = low * low / (cfg.cost_denominator * c_max);
  return width_floor(width, high);
}

}  // namespace detail

// Runs one budget search on an existing prober, so several searches can
// share a probe cache. root/mandatory must match the prober's.
inline detail::SearchResult run_budget_search(TreeProber& prober, const CostMatrix& metric,
                                              const std::vector<double>& rewards, double budget,
                                              NodeId root, NodeId mandatory,
                                              const SearchConfig& cfg = {},
                                              const ProbeObserver& observer = nullptr) {
  if (prober.mandatory_reach() > budget)
    throw InfeasibleError("budget search: budget below the root-mandatory distance");
  double pi_others = 0.0, pi_min = kInf;
  for (NodeId u : prober.nodes()) {
    if (u != root) pi_others += rewards[u];
    if (rewards[u] > 0.0) pi_min = std::min(pi_min, rewards[u]);
  }
  if (pi_others <= 0.0) throw InputError("budget search: all rewards are zero");
  if (prober.max_cost() == 0.0) {
    detail::SearchResult res;
    res.atoms = {{1.0, prober.star_probe(prober.size())}};
    res.encountered.push_back(res.atoms[0].probe);
    if (observer) observer(res.atoms[0].probe);
    return res;
  }
  const double n = prober.size();
  const double high = n * prober.max_cost() / pi_min;
  const double low = 1.0 / pi_others;
  const double lb = reward_lower_bound(prober.nodes(), metric, rewards, budget, root, mandatory);
  const double width = detail::budget_width(cfg, low, lb, prober.max_cost(), high);
  return detail::budget_search(prober, budget, low, high, width, observer);
}

// Budget-constrained tree distribution: at most two trees, each containing
// the mandatory node, whose weighted cost meets the budget exactly (or a
// single within-budget tree) and whose weighted reward is near-optimal among
// rooted paths through `mandatory` inside `nodes`.
inline TreeDistribution bin_search_pca(const std::vector<NodeId>& nodes, const CostMatrix& metric,
                                       const std::vector<double>& rewards, double budget,
                                       NodeId root, NodeId mandatory,
                                       const SearchConfig& cfg = {},
                                       const ProbeObserver& observer = nullptr) {
  TreeProber prober(metric, nodes, root, mandatory, &rewards, TreeProber::Penalties::ScaledRewards);
  return detail::materialize(prober,
                             run_budget_search(prober, metric, rewards, budget, root, mandatory,
                                               cfg, observer));
}

// Coverage-constrained tree distribution for the k-path latency pipeline:
// uniform penalties, weighted coverage exactly k, weighted cost at most the
// cheapest walk collection covering k nodes. M is the cost denominator
// (costs are integer multiples of 1/M).
inline TreeDistribution b_search_kmlp(const std::vector<NodeId>& nodes, const CostMatrix& metric,
                                      NodeId root, int k, double cost_denominator = 1.0,
                                      const ProbeObserver& observer = nullptr) {
  const int n = static_cast<int>(nodes.size());
  if (k < 1 || k > n) throw InputError("b_search_kmlp: k out of range");
  TreeProber prober(metric, nodes, root, -1, nullptr, TreeProber::Penalties::Uniform);
  if (prober.max_cost() == 0.0) {
    detail::SearchResult res;
    res.atoms = {{1.0, prober.star_probe(k)}};
    return detail::materialize(prober, res);
  }
  const double width =
      detail::width_floor(1.0 / (static_cast<double>(n) * n * cost_denominator),
                          prober.size() * prober.max_cost());
  return detail::materialize(prober, detail::coverage_search(prober, k, width, observer));
}

}  // namespace pcw
