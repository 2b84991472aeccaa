#pragma once

// Rooted, point-to-point, and cycle orienteering solvers built on the
// Lagrangian tree searches, with instance-wise upper bounds.
//
// Each solver guesses the node w that an optimal solution is "anchored" at
// (largest c_rw, or largest c_rw + c_wt for P2P), restricts to the candidate
// set that guess allows, runs budget-guided binary searches, extracts a
// route from every probe tree, and keeps the best. Certificate totals from
// the probes yield per-guess upper bounds; the aggregate bound is the max
// over guesses of the per-guess minimum.

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "pcw/lagrange.hpp"
#include "pcw/metric.hpp"
#include "pcw/parallel.hpp"

namespace pcw {

inline constexpr double kFeasibilityTol = 1e-9;

struct OrienteeringInstance {
  CostMatrix metric;
  std::vector<double> rewards;
  NodeId root = 0;
  NodeId endpoint = -1;  // P2P only
  double budget = 0.0;
  bool non_metric = false;  // guarantees are suspended, bounds stay valid

  static OrienteeringInstance create(CostMatrix metric, std::vector<double> rewards, NodeId root,
                                     double budget, NodeId endpoint = -1) {
    OrienteeringInstance inst;
    metric.validate_symmetric();
    if (static_cast<NodeId>(rewards.size()) != metric.n)
      throw InputError("orienteering: reward vector size mismatch");
    for (double r : rewards)
      if (!(r >= 0.0) || !std::isfinite(r)) throw InputError("orienteering: negative reward");
    if (root < 0 || root >= metric.n) throw InputError("orienteering: root out of range");
    if (endpoint >= metric.n) throw InputError("orienteering: endpoint out of range");
    if (!(budget >= 0.0)) throw InputError("orienteering: negative budget");
    inst.non_metric = metric.violates_triangle();
    inst.metric = std::move(metric);
    inst.rewards = std::move(rewards);
    inst.root = root;
    inst.endpoint = endpoint;
    inst.budget = budget;
    return inst;
  }
};

enum class RouteKind { RootedPath, EndpointPath, Cycle };

// A feasible route. Sequences start at the root; endpoint paths end at t and
// cycles end back at the root ([root] alone is the trivial cycle/path).
struct RoutedSolution {
  RouteKind kind = RouteKind::RootedPath;
  std::vector<NodeId> nodes;
  double reward = 0.0;
  double cost = 0.0;
};

struct GuessAudit {
  NodeId guess = -1;
  double candidate_set_reward = 0.0;  // pi over the restriction set of this guess
  double upper_bound = 0.0;           // per-guess min over probes
  double best_lambda = 0.0;           // lambda attaining it (0 = trivial bound)
  int probes = 0;
  bool pruned = false;
  bool skipped = false;  // anchor unreachable within the budget
};

struct UpperBoundReport {
  double aggregate = 0.0;
  std::vector<GuessAudit> guesses;
};

struct SolveOutcome {
  RoutedSolution best;
  UpperBoundReport report;
};

struct SolverOptions {
  SearchConfig search;
  bool prune = true;
  int threads = 1;
};

// ---- tree-to-route conversions ----

namespace detail {

struct TreeView {
  std::map<NodeId, std::vector<NodeId>> children;  // sorted heads per tail
  std::map<NodeId, NodeId> parent;

  explicit TreeView(const std::vector<std::pair<NodeId, NodeId>>& arcs) {
    for (const auto& [tail, head] : arcs) {
      children[tail].push_back(head);
      parent[head] = tail;
    }
    for (auto& [tail, heads] : children) std::sort(heads.begin(), heads.end());
  }
};

}  // namespace detail

// Depth-first doubling of the tree into a simple path from root to terminal
// visiting exactly the tree's nodes: children ascending, except that on the
// root-terminal spine the spine child goes last and the walk never climbs
// back above it. Repeats are cut, keeping first visits (last for terminal).
inline std::vector<NodeId> tree_to_path(const std::vector<std::pair<NodeId, NodeId>>& tree_arcs,
                                        NodeId root, NodeId terminal) {
  if (terminal == root) {
    if (!tree_arcs.empty()) throw InputError("tree_to_path: terminal equals root on a nonempty tree");
    return {root};
  }
  detail::TreeView view(tree_arcs);
  if (view.parent.find(terminal) == view.parent.end())
    throw InputError("tree_to_path: terminal not covered by the tree");

  std::set<NodeId> spine;
  for (NodeId v = terminal; v != root;) {
    spine.insert(v);
    auto it = view.parent.find(v);
    if (it == view.parent.end()) throw InputError("tree_to_path: terminal not below the root");
    v = it->second;
  }

  std::vector<NodeId> walk;
  auto dfs = [&](auto&& self, NodeId u) -> void {
    walk.push_back(u);
    auto it = view.children.find(u);
    if (it == view.children.end()) return;
    std::vector<NodeId> order = it->second;
    NodeId spine_child = -1;
    if (u != terminal) {
      for (NodeId c : order)
        if (spine.count(c)) spine_child = c;
    }
    for (NodeId c : order) {
      if (c == spine_child) continue;
      self(self, c);
      walk.push_back(u);
    }
    if (spine_child >= 0) self(self, spine_child);  // no climb back
  };
  dfs(dfs, root);

  std::vector<NodeId> path;
  std::set<NodeId> seen;
  for (NodeId v : walk) {
    if (v == terminal || seen.count(v)) continue;
    seen.insert(v);
    path.push_back(v);
  }
  path.push_back(terminal);
  return path;
}

// Closed variant: Euler tour back to the root, repeats cut at first visit,
// root appended at the end. A bare root gives [root].
inline std::vector<NodeId> tree_to_cycle(const std::vector<std::pair<NodeId, NodeId>>& tree_arcs,
                                         NodeId root) {
  if (tree_arcs.empty()) return {root};
  detail::TreeView view(tree_arcs);
  std::vector<NodeId> cycle;
  std::set<NodeId> seen;
  auto dfs = [&](auto&& self, NodeId u) -> void {
    if (!seen.count(u)) {
      seen.insert(u);
      cycle.push_back(u);
    }
    auto it = view.children.find(u);
    if (it == view.children.end()) return;
    for (NodeId c : it->second) self(self, c);
  };
  dfs(dfs, root);
  cycle.push_back(root);
  return cycle;
}

struct PathFragment {
  std::vector<NodeId> nodes;  // root followed by the chosen subsequence
  double reward = 0.0;
  double cost = 0.0;
};

// Maximum-reward contiguous subsequence Q of `path` (past the leading root)
// such that the walk root,Q has regret at most regret_budget; ties prefer
// shorter Q, then earlier start. The empty Q (bare root) is always feasible.
inline PathFragment extract_regret_bounded_subpath(const std::vector<NodeId>& path,
                                                   double regret_budget,
                                                   const std::vector<double>& rewards,
                                                   const CostMatrix& metric) {
  const NodeId root = path.front();
  const std::size_t m = path.size();
  std::vector<double> hop_prefix(m, 0.0);  // cost along `path` up to index i
  std::vector<double> reward_prefix(m + 1, 0.0);
  for (std::size_t i = 1; i < m; ++i) {
    hop_prefix[i] = hop_prefix[i - 1] + metric(path[i - 1], path[i]);
    reward_prefix[i + 1] = reward_prefix[i] + rewards[path[i]];
  }

  PathFragment best;
  best.nodes = {root};
  best.reward = rewards[root];
  best.cost = 0.0;
  std::size_t best_len = 0, best_start = 0;
  for (std::size_t i = 1; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      const double cost = metric(root, path[i]) + (hop_prefix[j] - hop_prefix[i]);
      const double regret = cost - metric(root, path[j]);
      if (regret > regret_budget + kFeasibilityTol) continue;
      const double reward = rewards[root] + (reward_prefix[j + 1] - reward_prefix[i]);
      const std::size_t len = j - i + 1;
      const bool better = reward > best.reward ||
                          (reward == best.reward && best_len != 0 &&
                           (len < best_len || (len == best_len && i < best_start)));
      if (!better) continue;
      best.reward = reward;
      best.cost = cost;
      best_len = len;
      best_start = i;
      best.nodes.assign(1, root);
      best.nodes.insert(best.nodes.end(), path.begin() + i, path.begin() + j + 1);
    }
  }
  return best;
}

// ---- solver scaffolding ----

namespace detail {

struct Candidate {
  RoutedSolution sol;
  long sequence = 0;  // per-guess construction order, for deterministic ties
  bool valid = false;
};

struct GuessOutcome {
  GuessAudit audit;
  Candidate best;
};

inline void offer(Candidate& slot, RoutedSolution sol, long sequence) {
  if (!slot.valid || sol.reward > slot.sol.reward) {
    slot.sol = std::move(sol);
    slot.sequence = sequence;
    slot.valid = true;
  }
}

inline double route_reward(const std::vector<NodeId>& nodes, const std::vector<double>& rewards) {
  double r = 0.0;
  std::set<NodeId> seen;
  for (NodeId v : nodes)
    if (seen.insert(v).second) r += rewards[v];
  return r;
}

// Recomputes cost/reward, enforces the structural route contract, and
// reports budget feasibility.
inline bool check_route(const OrienteeringInstance& inst, RoutedSolution& sol) {
  if (sol.nodes.empty() || sol.nodes.front() != inst.root)
    throw std::logic_error("orienteering: route must start at the root");
  const bool closed = sol.kind == RouteKind::Cycle && sol.nodes.size() > 1;
  if (closed && sol.nodes.back() != inst.root)
    throw std::logic_error("orienteering: cycle must close at the root");
  if (sol.kind == RouteKind::EndpointPath && sol.nodes.back() != inst.endpoint)
    throw std::logic_error("orienteering: path must end at the endpoint");
  std::set<NodeId> seen;
  for (std::size_t i = 0; i + (closed ? 1 : 0) < sol.nodes.size(); ++i)
    if (!seen.insert(sol.nodes[i]).second)
      throw std::logic_error("orienteering: route repeats a node");
  sol.cost = inst.metric.path_cost(sol.nodes);
  sol.reward = route_reward(sol.nodes, inst.rewards);
  return sol.cost <= inst.budget + kFeasibilityTol * std::max(1.0, inst.budget);
}

// Drops interior occurrences of `v`, keeping both end elements in place.
inline void drop_interior(std::vector<NodeId>& seq, NodeId v) {
  if (seq.size() <= 2) return;
  auto last = seq.end() - 1;
  seq.erase(std::remove(seq.begin() + 1, last, v), last);
}

inline bool probe_covers(const LambdaProbe& p, NodeId v) {
  return std::binary_search(p.covered.begin(), p.covered.end(), v);
}

// Deterministic pruning scheduler: guesses run in fixed-size blocks; each
// block sees the best value of fully finished earlier blocks, so output is
// independent of thread count and scheduling. Within its own task a guess
// additionally prunes against its own candidates.
template <typename Task>
std::vector<GuessOutcome> run_guess_blocks(std::size_t count, int threads, double initial_best,
                                           Task&& task) {
  constexpr std::size_t kBlock = 16;
  std::vector<GuessOutcome> results(count);
  double best = initial_best;
  for (std::size_t start = 0; start < count; start += kBlock) {
    const std::size_t end = std::min(count, start + kBlock);
    parallel_for(end - start, threads,
                 [&](std::size_t offset) { task(start + offset, best, results[start + offset]); });
    for (std::size_t i = start; i < end; ++i)
      if (results[i].best.valid) best = std::max(best, results[i].best.sol.reward);
  }
  return results;
}

inline SolveOutcome combine(std::vector<GuessOutcome>&& results, RouteKind kind,
                            const OrienteeringInstance& inst) {
  SolveOutcome out;
  out.best.kind = kind;
  out.best.nodes = {inst.root};
  out.best.reward = inst.rewards[inst.root];
  out.best.cost = 0.0;
  bool have = false;
  for (GuessOutcome& g : results) {
    out.report.guesses.push_back(g.audit);
    out.report.aggregate = std::max(out.report.aggregate, g.audit.upper_bound);
    if (g.best.valid && (!have || g.best.sol.reward > out.best.reward)) {
      out.best = g.best.sol;
      have = true;
    }
  }
  if (!detail::check_route(inst, out.best))
    throw std::logic_error("orienteering: returned route violates the budget");
  return out;
}

}  // namespace detail

// ---- rooted orienteering ----

inline SolveOutcome solve_rooted(const OrienteeringInstance& inst, const SolverOptions& options = {}) {
  const CostMatrix& c = inst.metric;
  const std::vector<double>& pi = inst.rewards;
  const NodeId r = inst.root;
  const double B = inst.budget;

  // Anchor guesses ordered near-to-far so pruning bites early. Every node is
  // a candidate anchor; unreachable ones are skipped inside their task.
  std::vector<NodeId> guesses;
  for (NodeId w = 0; w < c.n; ++w) guesses.push_back(w);
  std::sort(guesses.begin(), guesses.end(),
            [&](NodeId a, NodeId b) { return c(r, a) != c(r, b) ? c(r, a) < c(r, b) : a < b; });

  auto task = [&](std::size_t gi, double block_best, detail::GuessOutcome& out) {
    const NodeId w = guesses[gi];
    out.audit.guess = w;
    if (w == r) {
      out.audit.candidate_set_reward = pi[r];
      out.audit.upper_bound = pi[r];
      detail::offer(out.best, RoutedSolution{RouteKind::RootedPath, {r}, pi[r], 0.0}, 0);
      return;
    }
    std::vector<NodeId> allowed;
    double pi_bar = 0.0;
    for (NodeId u = 0; u < c.n; ++u)
      if (c(r, u) <= c(r, w)) {
        allowed.push_back(u);
        pi_bar += pi[u];
      }
    TreeProber prober(c, allowed, r, w, &pi, TreeProber::Penalties::ScaledRewards);
    if (prober.mandatory_reach() > B) {
      out.audit.skipped = true;  // no feasible path visits w
      return;
    }
    out.audit.candidate_set_reward = pi_bar;
    out.audit.upper_bound = pi_bar;  // the trivial large-lambda bound

    long sequence = 0;
    double own_best = -kInf;
    auto observer = [&](std::size_t probe_index) {
      const LambdaProbe& p = prober.at(probe_index);
      ++out.audit.probes;
      if (detail::probe_covers(p, w)) {
        std::vector<NodeId> path = tree_to_path(p.tree_arcs, r, w);
        PathFragment frag = extract_regret_bounded_subpath(path, B - c(r, w), pi, c);
        RoutedSolution sol{RouteKind::RootedPath, std::move(frag.nodes), 0.0, 0.0};
        if (detail::check_route(inst, sol)) {
          own_best = std::max(own_best, sol.reward);
          detail::offer(out.best, std::move(sol), sequence);
        }
        ++sequence;
      }
      if (p.lambda > 0.0) {
        const double ub = pi_bar + (B - p.certificate_total) / p.lambda;
        if (ub < out.audit.upper_bound) {
          out.audit.upper_bound = ub;
          out.audit.best_lambda = p.lambda;
        }
      }
      if (options.prune && out.audit.upper_bound <= std::max(block_best, own_best)) {
        out.audit.pruned = true;
        return false;
      }
      return true;
    };
    run_budget_search(prober, c, pi, B, r, w, options.search, observer);
  };
  std::vector<detail::GuessOutcome> results =
      detail::run_guess_blocks(guesses.size(), options.threads, pi[r], task);

  return detail::combine(std::move(results), RouteKind::RootedPath, inst);
}

// ---- point-to-point orienteering ----

inline SolveOutcome solve_p2p(const OrienteeringInstance& inst, const SolverOptions& options = {}) {
  const CostMatrix& c = inst.metric;
  const std::vector<double>& pi = inst.rewards;
  const NodeId r = inst.root;
  const NodeId t = inst.endpoint;
  const double B = inst.budget;
  if (t < 0) throw InputError("solve_p2p: endpoint required");
  if (t == r) throw InputError("solve_p2p: endpoint equals the root (use the cycle solver)");
  if (c(r, t) > B) throw InfeasibleError("solve_p2p: budget below the direct root-endpoint distance");

  std::vector<NodeId> guesses;
  for (NodeId w = 0; w < c.n; ++w) guesses.push_back(w);
  std::sort(guesses.begin(), guesses.end(), [&](NodeId a, NodeId b) {
    const double ka = c(r, a) + c(a, t), kb = c(r, b) + c(b, t);
    return ka != kb ? ka < kb : a < b;
  });

  auto task = [&](std::size_t gi, double block_best, detail::GuessOutcome& out) {
    const NodeId w = guesses[gi];
    out.audit.guess = w;

    std::vector<NodeId> allowed;
    double pi_bar = 0.0;
    const double key = c(r, w) + c(w, t);
    for (NodeId u = 0; u < c.n; ++u)
      if (c(r, u) + c(u, t) <= key || u == r || u == t) {
        allowed.push_back(u);
        pi_bar += pi[u];
      }

    // The direct hop is the route every guess can fall back to.
    double own_best = -kInf;
    RoutedSolution direct{RouteKind::EndpointPath, {r, t}, 0.0, 0.0};
    if (detail::check_route(inst, direct)) {
      own_best = std::max(own_best, direct.reward);
      detail::offer(out.best, std::move(direct), -1);
    }
    if (w == r || w == t) {  // trivial guesses contribute their set bound
      out.audit.candidate_set_reward = pi_bar;
      out.audit.upper_bound = pi_bar;
      return;
    }

    TreeProber prober_r(c, allowed, r, w, &pi, TreeProber::Penalties::ScaledRewards);
    TreeProber prober_t(c, allowed, t, w, &pi, TreeProber::Penalties::ScaledRewards);
    const double reach_r = prober_r.mandatory_reach();  // = c_rw under the triangle inequality
    const double reach_t = prober_t.mandatory_reach();
    if (reach_r + reach_t > B) {
      out.audit.skipped = true;
      return;
    }
    out.audit.candidate_set_reward = pi_bar;
    out.audit.upper_bound = pi_bar;

    const double regret_budget = B - c(r, w) - c(w, t);
    long sequence = 0;
    double min_full_r = kInf, min_full_t = kInf;  // min (B - Y)/lambda per side
    double min_ub2 = kInf, min_ub3 = kInf;

    auto refresh_bound = [&](double lambda) {
      const double term_a = pi_bar + std::min(min_full_r, min_full_t);
      const double term_b = (pi_bar + min_ub2) + (pi_bar + min_ub3);
      const double ub = std::min(term_a, term_b);
      if (ub < out.audit.upper_bound) {
        out.audit.upper_bound = ub;
        out.audit.best_lambda = lambda;
      }
    };

    auto make_observer = [&](TreeProber* prober, bool r_side) {
      return [&, prober, r_side](std::size_t probe_index) {
        const LambdaProbe& p = prober->at(probe_index);
        ++out.audit.probes;
        if (detail::probe_covers(p, w)) {
          const NodeId side_root = r_side ? r : t;
          std::vector<NodeId> path = tree_to_path(p.tree_arcs, side_root, w);
          PathFragment frag = extract_regret_bounded_subpath(path, regret_budget, pi, c);
          std::vector<NodeId> nodes;
          if (r_side) {
            nodes = std::move(frag.nodes);
            detail::drop_interior(nodes, t);
            if (nodes.back() != t) nodes.push_back(t);
          } else {
            nodes.assign(frag.nodes.rbegin(), frag.nodes.rend());  // ends at t
            detail::drop_interior(nodes, r);
            if (nodes.front() != r) nodes.insert(nodes.begin(), r);
          }
          RoutedSolution sol{RouteKind::EndpointPath, std::move(nodes), 0.0, 0.0};
          if (detail::check_route(inst, sol)) {
            own_best = std::max(own_best, sol.reward);
            detail::offer(out.best, std::move(sol), sequence);
          }
          ++sequence;
        }
        if (p.lambda > 0.0) {
          if (r_side) {
            min_full_r = std::min(min_full_r, (B - p.certificate_total) / p.lambda);
            min_ub2 = std::min(min_ub2, (B - reach_t - p.certificate_total) / p.lambda);
          } else {
            min_full_t = std::min(min_full_t, (B - p.certificate_total) / p.lambda);
            min_ub3 = std::min(min_ub3, (B - reach_r - p.certificate_total) / p.lambda);
          }
          refresh_bound(p.lambda);
        }
        if (options.prune && out.audit.upper_bound <= std::max(block_best, own_best)) {
          out.audit.pruned = true;
          return false;
        }
        return true;
      };
    };

    run_budget_search(prober_r, c, pi, B - reach_t, r, w, options.search,
                      make_observer(&prober_r, true));
    if (!out.audit.pruned)
      run_budget_search(prober_t, c, pi, B - reach_r, t, w, options.search,
                        make_observer(&prober_t, false));
  };
  std::vector<detail::GuessOutcome> results =
      detail::run_guess_blocks(guesses.size(), options.threads, pi[r] + pi[t], task);

  // Every guess seeded the direct [r, t] route, so a candidate always exists.
  return detail::combine(std::move(results), RouteKind::EndpointPath, inst);
}

// ---- cycle orienteering ----

inline SolveOutcome solve_cycle(const OrienteeringInstance& inst, const SolverOptions& options = {}) {
  const CostMatrix& c = inst.metric;
  const std::vector<double>& pi = inst.rewards;
  const NodeId r = inst.root;
  const double B = inst.budget;

  std::vector<NodeId> guesses;
  for (NodeId w = 0; w < c.n; ++w) guesses.push_back(w);
  std::sort(guesses.begin(), guesses.end(),
            [&](NodeId a, NodeId b) { return c(r, a) != c(r, b) ? c(r, a) < c(r, b) : a < b; });

  auto task = [&](std::size_t gi, double block_best, detail::GuessOutcome& out) {
    const NodeId w = guesses[gi];
    out.audit.guess = w;
    if (w == r) {
      out.audit.candidate_set_reward = pi[r];
      out.audit.upper_bound = pi[r];
      detail::offer(out.best, RoutedSolution{RouteKind::Cycle, {r}, pi[r], 0.0}, 0);
      return;
    }
    std::vector<NodeId> allowed;
    double pi_bar = 0.0;
    for (NodeId u = 0; u < c.n; ++u)
      if (c(r, u) <= c(r, w)) {
        allowed.push_back(u);
        pi_bar += pi[u];
      }
    TreeProber prober(c, allowed, r, w, &pi, TreeProber::Penalties::ScaledRewards);
    const double reach = prober.mandatory_reach();  // = c_rw under the triangle inequality
    if (2.0 * reach > B) {
      out.audit.skipped = true;  // no feasible cycle visits w
      return;
    }
    out.audit.candidate_set_reward = pi_bar;
    out.audit.upper_bound = pi_bar;

    long sequence = 0;
    double own_best = -kInf;
    std::set<std::size_t> extracted;
    auto observer = [&](std::size_t probe_index) {
      const LambdaProbe& p = prober.at(probe_index);
      ++out.audit.probes;
      if (detail::probe_covers(p, w) && extracted.insert(probe_index).second) {
        if (p.tree_cost <= B / 2.0) {
          RoutedSolution sol{RouteKind::Cycle, tree_to_cycle(p.tree_arcs, r), 0.0, 0.0};
          if (detail::check_route(inst, sol)) {
            own_best = std::max(own_best, sol.reward);
            detail::offer(out.best, std::move(sol), sequence);
          }
        }
        ++sequence;
        std::vector<NodeId> path = tree_to_path(p.tree_arcs, r, w);
        PathFragment frag = extract_regret_bounded_subpath(path, B - 2.0 * c(r, w), pi, c);
        std::vector<NodeId> nodes = std::move(frag.nodes);
        if (nodes.size() > 1) nodes.push_back(r);
        RoutedSolution sol{RouteKind::Cycle, std::move(nodes), 0.0, 0.0};
        if (detail::check_route(inst, sol)) {
          own_best = std::max(own_best, sol.reward);
          detail::offer(out.best, std::move(sol), sequence);
        }
        ++sequence;
      }
      if (p.lambda > 0.0) {
        const double ub1 = pi_bar + (B - p.certificate_total) / p.lambda;
        const double ub4 =
            2.0 * pi_bar - pi[r] - pi[w] + (B - 2.0 * p.certificate_total) / p.lambda;
        const double ub = std::min(ub1, ub4);
        if (ub < out.audit.upper_bound) {
          out.audit.upper_bound = ub;
          out.audit.best_lambda = p.lambda;
        }
      }
      if (options.prune && out.audit.upper_bound <= std::max(block_best, own_best)) {
        out.audit.pruned = true;
        return false;
      }
      return true;
    };
    run_budget_search(prober, c, pi, B / 2.0, r, w, options.search, observer);
    if (!out.audit.pruned)
      run_budget_search(prober, c, pi, B - reach, r, w, options.search, observer);
  };
  std::vector<detail::GuessOutcome> results =
      detail::run_guess_blocks(guesses.size(), options.threads, pi[r], task);

  return detail::combine(std::move(results), RouteKind::Cycle, inst);
}

}  // namespace pcw
