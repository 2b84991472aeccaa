// Command-line front end: single-instance prize-collecting runs, the three
// orienteering solvers, coverage-constrained tree distributions, and the
// benchmark harness.

#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "pcw/bench.hpp"
#include "pcw/lagrange.hpp"
#include "pcw/orienteering.hpp"
#include "pcw/pcw_arborescence.hpp"
#include "pcw/tsplib.hpp"

namespace {

using namespace pcw;

std::string fmt(double x) { return detail::fmt_value(x); }

// Digraph instance file:
//   # comment
//   <n> <m> <root>
//   <pi_0> ... <pi_{n-1}>
//   <tail> <head> <cost>   (m lines)
PcwInstance read_pcw_file(const std::string& path) {
  std::istringstream in(detail::read_file(path));
  std::string line;
  std::vector<double> numbers;
  while (std::getline(in, line)) {
    const std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream ls(t);
    double x;
    while (ls >> x) numbers.push_back(x);
    ls.clear();
    std::string rest;
    if (ls >> rest; !rest.empty())
      throw InputError("pcw file: non-numeric token '" + rest + "'");
  }
  std::size_t at = 0;
  auto next = [&](const char* what) {
    if (at >= numbers.size()) throw InputError(std::string("pcw file: missing ") + what);
    return numbers[at++];
  };
  const int n = static_cast<int>(next("node count"));
  const int m = static_cast<int>(next("arc count"));
  const int root = static_cast<int>(next("root"));
  Digraph g;
  g.node_count = n;
  g.root = root;
  std::vector<double> pi(static_cast<std::size_t>(std::max(n, 0)));
  for (double& p : pi) p = next("penalty");
  for (int a = 0; a < m; ++a) {
    const int tail = static_cast<int>(next("arc tail"));
    const int head = static_cast<int>(next("arc head"));
    const double cost = next("arc cost");
    g.arcs.push_back({tail, head, cost});
  }
  if (at != numbers.size()) throw InputError("pcw file: trailing data");
  return PcwInstance::with_identity_labels(std::move(g), std::move(pi));
}

struct CommonFlags {
  double budget = -1.0;
  long long tsp_opt = 0;
  int gen = 0;
  double epsilon = 0.01;
  std::string termination = "practical";
  double cost_denominator = 1.0;
  int threads = static_cast<int>(std::thread::hardware_concurrency());
  bool no_prune = false;
  bool verbose = false;

  void attach(CLI::App* cmd, bool wants_budget, bool wants_gen) {
    if (wants_budget) {
      cmd->add_option("--budget", budget, "cost budget B");
      cmd->add_option("--tsp-opt", tsp_opt, "optimal tour cost; B defaults to ceil(value/2)");
    }
    if (wants_gen) cmd->add_option("--gen", gen, "reward scheme 1|2|3 (TSPLIB inputs)");
    cmd->add_option("--epsilon", epsilon, "epsilon for the theory termination mode");
    cmd->add_option("--termination", termination, "practical|theory|exact");
    cmd->add_option("--cost-denominator", cost_denominator,
                    "M such that costs are integer multiples of 1/M (exact mode)");
    cmd->add_option("--threads", threads, "worker threads (default: all cores)");
    cmd->add_flag("--no-prune", no_prune, "disable upper-bound pruning");
    cmd->add_flag("--verbose", verbose, "print per-guess audit / reduction trace");
  }

  SearchConfig search() const {
    SearchConfig cfg;
    cfg.epsilon = epsilon;
    cfg.cost_denominator = cost_denominator;
    if (termination == "practical")
      cfg.termination = Termination::Practical;
    else if (termination == "theory")
      cfg.termination = Termination::Theory;
    else if (termination == "exact")
      cfg.termination = Termination::Exact;
    else
      throw InputError("unknown termination mode " + termination);
    return cfg;
  }

  SolverOptions solver() const {
    SolverOptions opt;
    opt.search = search();
    opt.prune = !no_prune;
    opt.threads = std::max(1, threads);
    return opt;
  }

  double resolve_budget() const {
    if (budget >= 0.0) return budget;
    if (tsp_opt > 0) return std::ceil(static_cast<double>(tsp_opt) / 2.0);
    throw InputError("need --budget or --tsp-opt");
  }
};

OrienteeringInstance load_orienteering(const std::string& path, const CommonFlags& flags,
                                       int end_node_1based) {
  const std::string text = detail::read_file(path);
  if (path.size() > 4 && path.substr(path.size() - 4) == ".p2p") {
    P2pInstance p2p = parse_p2p(text);
    NodeId end = end_node_1based > 0 ? end_node_1based - 1 : p2p.end;
    return OrienteeringInstance::create(p2p.matrix, p2p.rewards, p2p.start,
                                        flags.resolve_budget(), end);
  }
  TsplibInstance tsp = parse_tsplib(text);
  if (flags.gen < 1 || flags.gen > 3) throw InputError("TSPLIB inputs need --gen 1|2|3");
  NodeId end = end_node_1based > 0 ? end_node_1based - 1 : -1;
  return OrienteeringInstance::create(tsp.matrix, generate_rewards(tsp, flags.gen), 0,
                                      flags.resolve_budget(), end);
}

void print_solution(const SolveOutcome& out, const CommonFlags& flags) {
  std::cout << "Val = " << fmt(out.best.reward) << '\n';
  std::cout << "cost = " << fmt(out.best.cost) << '\n';
  std::cout << "nodes:";
  for (NodeId v : out.best.nodes) std::cout << ' ' << v + 1;
  std::cout << '\n';
  std::cout << "UB = " << fmt(out.report.aggregate) << '\n';
  if (flags.verbose) {
    std::cout << "guess audit:\n";
    for (const GuessAudit& g : out.report.guesses) {
      std::cout << "  w=" << g.guess + 1 << " set_reward=" << fmt(g.candidate_set_reward)
                << " ub=" << fmt(g.upper_bound) << " lambda=" << fmt(g.best_lambda)
                << " probes=" << g.probes << (g.pruned ? " pruned" : "")
                << (g.skipped ? " skipped" : "") << '\n';
    }
  }
}

int run(int argc, char** argv) {
  CLI::App app{"prize-collecting walks, orienteering solvers, and benchmarks"};
  app.require_subcommand(1);

  std::string instance_path, manifest_path, out_path;
  int end_node = 0, k = 1;
  CommonFlags flags;

  CLI::App* pcw_cmd = app.add_subcommand("pcw", "prize-collecting arborescence on a digraph file");
  pcw_cmd->add_option("instance", instance_path, "digraph instance file")->required();

  CLI::App* rooted = app.add_subcommand("solve-rooted", "rooted orienteering");
  CLI::App* p2p = app.add_subcommand("solve-p2p", "point-to-point orienteering");
  CLI::App* cycle = app.add_subcommand("solve-cycle", "cycle orienteering");
  for (CLI::App* cmd : {rooted, p2p, cycle})
    cmd->add_option("instance", instance_path, "TSPLIB or .p2p instance")->required();
  p2p->add_option("--end-node", end_node, "1-based end node (TSPLIB inputs)");

  CLI::App* kmlp = app.add_subcommand("kmlp-trees", "coverage-constrained tree distribution");
  kmlp->add_option("instance", instance_path, "TSPLIB instance")->required();
  kmlp->add_option("--k", k, "target covered node count")->required();

  CLI::App* bench = app.add_subcommand("bench", "run a benchmark manifest");
  bench->add_option("manifest", manifest_path, "manifest CSV")->required();
  bench->add_option("--out", out_path, "write the results CSV here (default: stdout)");

  flags.attach(pcw_cmd, false, false);
  flags.attach(rooted, true, true);
  flags.attach(p2p, true, true);
  flags.attach(cycle, true, true);
  flags.attach(kmlp, false, true);
  flags.attach(bench, false, false);

  CLI11_PARSE(app, argc, argv);

  if (pcw_cmd->parsed()) {
    PcwInstance inst = read_pcw_file(instance_path);
    std::ostringstream trace;
    PcwResult res = pcw_arborescence(inst, flags.verbose ? &trace : nullptr);
    if (flags.verbose) std::cerr << trace.str();
    std::cout << "PCC = " << fmt(prize_collecting_cost(res.tree, inst)) << '\n';
    std::cout << "Y = " << fmt(res.certificate.total) << '\n';
    int arcs = 0;
    for (ArcId a : res.tree.parent_arc) arcs += (a >= 0);
    std::cout << "tree arcs (" << arcs << "):\n";
    for (NodeId v = 0; v < inst.graph.node_count; ++v)
      if (res.tree.parent_arc[v] >= 0) {
        const Arc& a = inst.graph.arcs[res.tree.parent_arc[v]];
        std::cout << "  " << a.tail << " -> " << a.head << "  cost " << fmt(a.cost) << '\n';
      }
    std::cout << "certificate entries: " << res.certificate.entries.size() << '\n';
    return 0;
  }

  if (rooted->parsed() || p2p->parsed() || cycle->parsed()) {
    OrienteeringInstance inst = load_orienteering(instance_path, flags, end_node);
    if (inst.non_metric) std::cerr << "note: instance is not metric; guarantees suspended\n";
    SolveOutcome out;
    if (rooted->parsed())
      out = solve_rooted(inst, flags.solver());
    else if (cycle->parsed())
      out = solve_cycle(inst, flags.solver());
    else
      out = solve_p2p(inst, flags.solver());
    print_solution(out, flags);
    return 0;
  }

  if (kmlp->parsed()) {
    TsplibInstance tsp = parse_tsplib(detail::read_file(instance_path));
    std::vector<NodeId> nodes(tsp.dimension);
    for (NodeId v = 0; v < tsp.dimension; ++v) nodes[v] = v;
    TreeDistribution dist = b_search_kmlp(nodes, tsp.matrix, 0, k, flags.cost_denominator);
    std::cout << "atoms:\n";
    for (const auto& atom : dist.atoms) {
      const LambdaProbe& p = dist.probes[atom.probe];
      std::cout << "  weight " << fmt(atom.weight) << "  lambda " << fmt(p.lambda) << "  cost "
                << fmt(p.tree_cost) << "  covered " << p.covered_count << '\n';
      if (flags.verbose)
        for (const auto& [tail, head] : p.tree_arcs)
          std::cout << "    " << tail + 1 << " -> " << head + 1 << '\n';
    }
    std::cout << "weighted cost = " << fmt(dist.weighted_cost()) << '\n';
    std::cout << "weighted coverage = " << fmt(dist.weighted_coverage()) << '\n';
    std::cout << "probes: " << dist.probes.size() << '\n';
    return 0;
  }

  // bench
  BenchOptions options;
  options.search = flags.search();
  options.prune = !flags.no_prune;
  options.threads = std::max(1, flags.threads);
  options.verbose = flags.verbose;
  std::vector<BenchRowSpec> specs = parse_manifest(detail::read_file(manifest_path));
  BenchOutput out = run_bench(specs, options, flags.verbose ? &std::cerr : nullptr);
  if (out_path.empty()) {
    std::cout << out.csv;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw InputError("cannot write " + out_path);
    f << out.csv;
    // Echo the summary block for quick reading.
    std::istringstream in(out.csv);
    std::string line;
    while (std::getline(in, line))
      if (!line.empty() && line[0] == '#') std::cout << line << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const pcw::InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return 2;
  } catch (const CLI::Error& e) {
    std::cerr << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
