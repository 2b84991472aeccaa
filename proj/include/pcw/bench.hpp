#pragma once

// Benchmark harness: run solver variants over a manifest of datasets and
// emit the results table.

#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pcw/orienteering.hpp"
#include "pcw/tsplib.hpp"

namespace pcw {

enum class BenchVariant { Rooted, P2p, Cycle };

struct BenchRowSpec {
  std::string dataset_path;
  long long tsp_opt = 0;
  int gen = 0;  // 0 for p2p rows (rewards come from the file)
  BenchVariant variant = BenchVariant::Rooted;
  std::optional<double> known_opt;
  std::optional<double> budget;  // default: ceil(tsp_opt / 2)
};

struct BenchOptions {
  SearchConfig search;
  bool prune = true;
  int threads = 1;
  bool verbose = false;
};

struct BenchOutput {
  std::vector<ResultRow> rows;
  std::string csv;
};

// Manifest: CSV lines `dataset_path,tsp_opt,gen,variant[,known_opt[,budget]]`,
// '#' comments and blank lines ignored.
inline std::vector<BenchRowSpec> parse_manifest(const std::string& text) {
  std::vector<BenchRowSpec> specs;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(t);
    while (std::getline(ls, field, ',')) fields.push_back(detail::trim(field));
    if (fields.size() < 4) throw InputError("manifest: need dataset_path,tsp_opt,gen,variant");
    BenchRowSpec spec;
    spec.dataset_path = fields[0];
    spec.tsp_opt = std::atoll(fields[1].c_str());
    spec.gen = std::atoi(fields[2].c_str());
    if (fields[3] == "rooted")
      spec.variant = BenchVariant::Rooted;
    else if (fields[3] == "p2p")
      spec.variant = BenchVariant::P2p;
    else if (fields[3] == "cycle")
      spec.variant = BenchVariant::Cycle;
    else
      throw InputError("manifest: unknown variant " + fields[3]);
    if (fields.size() > 4 && !fields[4].empty()) spec.known_opt = std::atof(fields[4].c_str());
    if (fields.size() > 5 && !fields[5].empty()) spec.budget = std::atof(fields[5].c_str());
    specs.push_back(std::move(spec));
  }
  return specs;
}

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

inline std::string file_stem(const std::string& path) {
  auto slash = path.find_last_of("/\\");
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = base.find_last_of('.');
  return dot == std::string::npos ? base : base.substr(0, dot);
}

}  // namespace detail

inline ResultRow run_bench_row(const BenchRowSpec& spec, const BenchOptions& options,
                               std::ostream* log = nullptr) {
  const std::string text = detail::read_file(spec.dataset_path);
  SolverOptions solver;
  solver.search = options.search;
  solver.prune = options.prune;
  solver.threads = 1;  // rows are the parallel unit

  ResultRow row;
  SolveOutcome outcome;
  if (spec.variant == BenchVariant::P2p) {
    P2pInstance p2p = parse_p2p(text);
    if (!spec.budget) throw InputError("manifest: p2p rows need an explicit budget");
    row.dataset = p2p.name.empty() ? detail::file_stem(spec.dataset_path) : p2p.name;
    row.budget = *spec.budget;
    OrienteeringInstance inst = OrienteeringInstance::create(p2p.matrix, p2p.rewards, p2p.start,
                                                             row.budget, p2p.end);
    outcome = solve_p2p(inst, solver);
  } else {
    TsplibInstance tsp = parse_tsplib(text);
    row.dataset = tsp.name.empty() ? detail::file_stem(spec.dataset_path) : tsp.name;
    row.budget = spec.budget ? *spec.budget : std::ceil(static_cast<double>(spec.tsp_opt) / 2.0);
    std::vector<double> rewards = generate_rewards(tsp, spec.gen);
    OrienteeringInstance inst =
        OrienteeringInstance::create(tsp.matrix, std::move(rewards), 0, row.budget);
    if (spec.variant == BenchVariant::Rooted)
      outcome = solve_rooted(inst, solver);
    else
      outcome = solve_cycle(inst, solver);
  }
  row.val = outcome.best.reward;
  row.ub = outcome.report.aggregate;
  row.opt = spec.known_opt;
  if (log) {
    *log << row.dataset << " B=" << row.budget << " Val=" << row.val << " UB=" << row.ub << '\n';
    if (options.verbose)
      for (const GuessAudit& g : outcome.report.guesses)
        *log << "  guess " << g.guess << " ub=" << g.upper_bound << " probes=" << g.probes
             << (g.pruned ? " pruned" : "") << (g.skipped ? " skipped" : "") << '\n';
  }
  return row;
}

inline BenchOutput run_bench(const std::vector<BenchRowSpec>& specs, const BenchOptions& options,
                             std::ostream* log = nullptr) {
  BenchOutput out;
  out.rows.resize(specs.size());
  parallel_for(specs.size(), options.threads,
               [&](std::size_t i) { out.rows[i] = run_bench_row(specs[i], options, nullptr); });
  if (log)
    for (const ResultRow& row : out.rows)
      *log << row.dataset << " B=" << row.budget << " Val=" << row.val << " UB=" << row.ub << '\n';
  out.csv = emit_results(out.rows);
  return out;
}

}  // namespace pcw
