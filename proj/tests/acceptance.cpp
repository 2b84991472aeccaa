// Acceptance suite: one test case per criterion, each printing a PASS/FAIL
// line. Criteria 6-8 consume the benchmark datasets under data/ (see
// data/fetch_data.sh); they fail with a clear message when those files are
// absent.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "pcw/bench.hpp"
#include "pcw/lagrange.hpp"
#include "pcw/orienteering.hpp"
#include "pcw/pcw_arborescence.hpp"

using namespace pcw;
namespace fs = std::filesystem;

namespace {

void report(int criterion, bool ok, const std::string& detail) {
  std::printf("[criterion %d] %s  %s\n", criterion, ok ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  CHECK_MESSAGE(ok, "criterion ", criterion, ": ", detail);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

fs::path data_dir() {
  if (const char* env = std::getenv("PCW_DATA_DIR")) return fs::path(env);
  return fs::path(PCW_SOURCE_DIR) / "data";
}

std::optional<std::string> load_if_exists(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

// name,value registry (tsp_opt.csv and friends)
std::map<std::string, double> read_registry(const std::string& text) {
  std::map<std::string, double> reg;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = pcw::detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto comma = t.find(',');
    if (comma == std::string::npos) continue;
    reg[t.substr(0, comma)] = std::atof(t.c_str() + comma + 1);
  }
  return reg;
}

const std::vector<std::string> kTsplibSubset = {"att48",  "gr48",  "hk48",    "berlin52",
                                                "st70",   "eil76", "pr76",    "kroA100",
                                                "rd100",  "eil101", "lin105", "gr120"};

struct BenchArtifacts {
  bool ran = false;
  std::string cycle_csv, rooted_csv;
  std::vector<BenchRowSpec> cycle_specs, rooted_specs;
};
BenchArtifacts g_bench;  // shared between criteria 6 and 8

}  // namespace

TEST_CASE("criterion 1: prize-collecting sandwich on random digraphs") {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(11001);
  int checked = 0;
  double worst_slack = kInf;
  bool ok = true;
  while (checked < 200) {
    PcwInstance inst = pcw::test::random_pcw_instance(rng, 5, 8);
    PcwResult res = pcw_arborescence(inst);
    const double pcc = prize_collecting_cost(res.tree, inst);
    const double y = res.certificate.total;
    const double opt = pcw::test::preflow_enumeration_opt(inst);
    worst_slack = std::min({worst_slack, y - pcc, opt - y});
    if (pcc > y + 1e-6 || y > opt + 1e-6) ok = false;
    ++checked;
  }
  const double secs = seconds_since(t0);
  ok = ok && secs < 60.0;
  char detail[160];
  std::snprintf(detail, sizeof detail, "%d instances, worst slack %.3g, %.1fs (limit 60s)",
                checked, worst_slack, secs);
  report(1, ok, detail);
}

TEST_CASE("criterion 2: theta-shift identity") {
  std::mt19937 rng(11001);  // same corpus as criterion 1
  int checked = 0;
  double worst = 0.0;
  bool ok = true;
  while (checked < 200) {
    PcwInstance inst = pcw::test::random_pcw_instance(rng, 5, 8);
    PcwResult res = pcw_arborescence(inst);
    if (inst.graph.node_count >= 3) {
      auto [tilde, theta] = subtract_theta(inst);
      const double lhs = prize_collecting_cost(res.tree, inst);
      const double rhs = prize_collecting_cost(res.tree, tilde) + theta.sum();
      worst = std::max(worst, std::abs(lhs - rhs));
      if (std::abs(lhs - rhs) > 1e-6) ok = false;
    }
    ++checked;
  }
  char detail[120];
  std::snprintf(detail, sizeof detail, "%d instances, worst deviation %.3g", checked, worst);
  report(2, ok, detail);
}

TEST_CASE("criterion 3: budget search meets the budget and the reward floor") {
  std::mt19937 rng(11003);
  std::uniform_int_distribution<int> rew(1, 20);
  const double eps = 0.01;
  int checked = 0;
  bool ok = true;
  std::string why;
  while (checked < 100) {
    const int n = std::uniform_int_distribution<int>(3, 7)(rng);
    CostMatrix c = CostMatrix::from_points(pcw::test::random_points(rng, n));
    std::vector<double> rewards(n);
    for (double& x : rewards) x = rew(rng);
    const NodeId w = std::uniform_int_distribution<int>(1, n - 1)(rng);
    double span = 0.0;
    for (NodeId v = 1; v < n; ++v) span += c(0, v);
    const double budget =
        c(0, w) + 1.0 + std::uniform_real_distribution<double>(0.2, 0.8)(rng) * span;

    SearchConfig cfg;
    cfg.epsilon = eps;
    std::vector<NodeId> nodes(n);
    for (int i = 0; i < n; ++i) nodes[i] = i;
    TreeDistribution d = bin_search_pca(nodes, c, rewards, budget, 0, w, cfg);
    const double wcost = d.weighted_cost();
    if (d.atoms.size() == 2 && std::abs(wcost - budget) > 1e-9 * std::max(1.0, budget)) {
      ok = false;
      why = "interpolated cost differs from the budget";
    }
    if (wcost > budget + 1e-9 * std::max(1.0, budget)) {
      ok = false;
      why = "weighted cost exceeds the budget";
    }
    const double best = pcw::test::best_rooted_path(c, rewards, 0, budget, nullptr, w);
    if (d.weighted_reward(rewards) < (1.0 - eps) * best - 1e-9) {
      ok = false;
      why = "weighted reward below (1-eps) * optimum";
    }
    ++checked;
  }
  report(3, ok, std::to_string(checked) + " instances" + (why.empty() ? "" : ("; " + why)));
}

TEST_CASE("criterion 4: coverage search meets k and the walk-cost bound") {
  std::mt19937 rng(11004);
  int checked = 0;
  bool ok = true;
  std::string why;
  while (checked < 100) {
    const int n = std::uniform_int_distribution<int>(2, 6)(rng);
    CostMatrix c = pcw::test::random_integer_metric(rng, n);
    const int k = std::uniform_int_distribution<int>(1, n)(rng);
    std::vector<NodeId> nodes(n);
    for (int i = 0; i < n; ++i) nodes[i] = i;
    TreeDistribution d = b_search_kmlp(nodes, c, 0, k);
    if (std::abs(d.weighted_coverage() - k) > 1e-9) {
      ok = false;
      why = "coverage not exactly k";
    }
    const double lstar = pcw::test::min_cost_covering(bidirect(c, nodes, 0), k);
    if (d.weighted_cost() > lstar + 1e-9) {
      ok = false;
      why = "weighted cost above the walk-collection optimum";
    }
    ++checked;
  }
  report(4, ok, std::to_string(checked) + " instances" + (why.empty() ? "" : ("; " + why)));
}

TEST_CASE("criterion 5: approximation guards against the enumeration oracle") {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937 rng(11005);
  std::uniform_int_distribution<int> rew(1, 10);
  const double eps = 0.01;
  bool ok = true;
  std::string why;
  int checked = 0;
  for (int it = 0; it < 100; ++it) {
    const int n = std::uniform_int_distribution<int>(4, 9)(rng);
    CostMatrix c = CostMatrix::from_points(pcw::test::random_points(rng, n));
    std::vector<double> pi(n);
    for (double& x : pi) x = rew(rng);
    double span = 0.0;
    for (NodeId v = 1; v < n; ++v) span += c(0, v);
    const double budget = std::uniform_real_distribution<double>(0.15, 0.6)(rng) * span;
    const NodeId t = n - 1;
    OrienteeringInstance inst = OrienteeringInstance::create(c, pi, 0, budget, t);

    SolveOutcome rooted = solve_rooted(inst);
    const double opt_rooted = pcw::test::best_rooted_path(c, pi, 0, budget);
    if (rooted.best.reward < (1.0 - eps) / 3.0 * opt_rooted - 1e-9 ||
        opt_rooted > rooted.report.aggregate + 1e-6) {
      ok = false;
      why = "rooted";
    }

    SolveOutcome cyc = solve_cycle(inst);
    const double opt_cycle = pcw::test::best_cycle(c, pi, 0, budget);
    if (cyc.best.reward < (1.0 - 2.0 * eps) / 4.0 * opt_cycle - 1e-9 ||
        opt_cycle > cyc.report.aggregate + 1e-6) {
      ok = false;
      why = "cycle";
    }

    if (c(0, t) <= budget) {
      SolveOutcome p2p = solve_p2p(inst);
      const double opt_p2p = pcw::test::best_p2p_path(c, pi, 0, t, budget);
      if (p2p.best.reward < (1.0 - eps) / 6.0 * opt_p2p - 1e-9 ||
          opt_p2p > p2p.report.aggregate + 1e-6) {
        ok = false;
        why = "p2p";
      }
    }
    ++checked;
  }
  const double secs = seconds_since(t0);
  ok = ok && secs < 300.0;
  char detail[160];
  std::snprintf(detail, sizeof detail, "%d instances per variant, %.1fs (limit 300s)%s%s",
                checked, secs, why.empty() ? "" : "; failed: ", why.c_str());
  report(5, ok, detail);
}

TEST_CASE("criterion 6: TSPLIB benchmark reproduction at desk scale") {
  const auto t0 = std::chrono::steady_clock::now();
  const fs::path dir = data_dir();
  std::string missing;
  for (const std::string& name : kTsplibSubset)
    if (!fs::exists(dir / "tsplib" / (name + ".tsp"))) missing += name + " ";
  auto tsp_opt_text = load_if_exists(dir / "tsp_opt.csv");
  auto cycle_opt_text = load_if_exists(dir / "cycle_opt.csv");
  if (!missing.empty() || !tsp_opt_text) {
    report(6, false,
           "benchmark data not present under " + dir.string() +
               " (run data/fetch_data.sh); missing: " + (missing.empty() ? "registries" : missing));
    return;
  }
  auto tsp_opt = read_registry(*tsp_opt_text);
  std::map<std::string, double> cycle_opt;
  if (cycle_opt_text) cycle_opt = read_registry(*cycle_opt_text);

  const std::vector<std::string> non_metric = {"att48", "gr48", "hk48", "gr120"};
  std::vector<BenchRowSpec>& cyc = g_bench.cycle_specs;
  std::vector<BenchRowSpec>& roo = g_bench.rooted_specs;
  for (const std::string& name : kTsplibSubset) {
    if (!tsp_opt.count(name)) {
      report(6, false, "tsp_opt.csv has no entry for " + name);
      return;
    }
    for (int gen = 1; gen <= 3; ++gen) {
      BenchRowSpec spec;
      spec.dataset_path = (dir / "tsplib" / (name + ".tsp")).string();
      spec.tsp_opt = static_cast<long long>(tsp_opt[name]);
      spec.gen = gen;
      spec.variant = BenchVariant::Cycle;
      const std::string key = name + "-gen" + std::to_string(gen);
      if (cycle_opt.count(key)) spec.known_opt = cycle_opt[key];
      cyc.push_back(spec);
      spec.variant = BenchVariant::Rooted;
      spec.known_opt.reset();
      roo.push_back(spec);
    }
  }

  BenchOptions options;
  options.threads = 8;
  BenchOutput cyc_out = run_bench(cyc, options);
  BenchOutput roo_out = run_bench(roo, options);
  g_bench.cycle_csv = cyc_out.csv;
  g_bench.rooted_csv = roo_out.csv;
  g_bench.ran = true;

  bool ok = true;
  std::string why;
  double sum_opt_over_val = 0.0, sum_ub_over_opt = 0.0, sum_ub_over_val = 0.0;
  int n_opt = 0;
  for (std::size_t i = 0; i < cyc_out.rows.size(); ++i) {
    const ResultRow& row = cyc_out.rows[i];
    const bool is_metric =
        std::find(non_metric.begin(), non_metric.end(),
                  pcw::detail::file_stem(cyc[i].dataset_path)) == non_metric.end();
    if (row.opt) {
      if (is_metric && row.val > *row.opt + 1e-9) {
        ok = false;
        why = "cycle Val > Opt on " + row.dataset;
      }
      if (*row.opt > row.ub + 1e-6) {
        ok = false;
        why = "cycle Opt > UB on " + row.dataset;
      }
      sum_opt_over_val += *row.opt / row.val;
      sum_ub_over_opt += row.ub / *row.opt;
      ++n_opt;
    } else {
      ok = false;
      why = "cycle optimum not configured for " + row.dataset + " gen " +
            std::to_string(cyc[i].gen) + " (fill data/cycle_opt.csv)";
    }
  }
  for (const ResultRow& row : roo_out.rows) {
    if (row.val > 0.0) sum_ub_over_val += row.ub / row.val;
  }
  if (n_opt > 0) {
    if (sum_opt_over_val / n_opt > 1.40) {
      ok = false;
      why = "cycle mean Opt/Val above 1.40";
    }
    if (sum_ub_over_opt / n_opt > 1.35) {
      ok = false;
      why = "cycle mean UB/Opt above 1.35";
    }
  }
  const double mean_ub_over_val = sum_ub_over_val / roo_out.rows.size();
  if (mean_ub_over_val > 1.30) {
    ok = false;
    why = "rooted mean UB/Val above 1.30";
  }
  const double secs = seconds_since(t0);
  if (secs >= 900.0) {
    ok = false;
    why = "wall clock above 15 minutes";
  }
  char detail[240];
  std::snprintf(detail, sizeof detail,
                "%zu cycle + %zu rooted rows; cycle mean Opt/Val %.3f, UB/Opt %.3f; rooted mean "
                "UB/Val %.3f; %.0fs%s%s",
                cyc_out.rows.size(), roo_out.rows.size(),
                n_opt ? sum_opt_over_val / n_opt : 0.0, n_opt ? sum_ub_over_opt / n_opt : 0.0,
                mean_ub_over_val, secs, why.empty() ? "" : "; ", why.c_str());
  report(6, ok, detail);
}

TEST_CASE("criterion 7: point-to-point benchmark at desk scale") {
  const fs::path dir = data_dir();
  auto manifest_text = load_if_exists(dir / "bench_p2p.csv");
  if (!manifest_text) {
    report(7, false,
           "p2p manifest/data not present under " + dir.string() + " (run data/fetch_data.sh)");
    return;
  }
  std::vector<BenchRowSpec> specs;
  try {
    specs = parse_manifest(*manifest_text);
    for (BenchRowSpec& spec : specs)
      spec.dataset_path = (dir / spec.dataset_path).string();
    for (const BenchRowSpec& spec : specs)
      if (!fs::exists(spec.dataset_path)) throw InputError("missing " + spec.dataset_path);
  } catch (const std::exception& e) {
    report(7, false, std::string("p2p data incomplete: ") + e.what());
    return;
  }
  BenchOptions options;
  options.threads = 8;
  BenchOutput out = run_bench(specs, options);
  bool ok = true;
  std::string why;
  double sum_opt_over_val = 0.0;
  int n_opt = 0;
  for (const ResultRow& row : out.rows) {
    if (!row.opt) {
      ok = false;
      why = "optimum not configured for a p2p row (fill the manifest's known_opt column)";
      continue;
    }
    if (row.val > *row.opt + 1e-6) {
      ok = false;
      why = "Val > Opt on " + row.dataset;
    }
    if (*row.opt > row.ub + 1e-6) {
      ok = false;
      why = "Opt > UB on " + row.dataset;
    }
    sum_opt_over_val += *row.opt / row.val;
    ++n_opt;
  }
  if (n_opt && sum_opt_over_val / n_opt > 1.30) {
    ok = false;
    why = "mean Opt/Val above 1.30";
  }
  char detail[200];
  std::snprintf(detail, sizeof detail, "%zu rows; mean Opt/Val %.3f%s%s", out.rows.size(),
                n_opt ? sum_opt_over_val / n_opt : 0.0, why.empty() ? "" : "; ", why.c_str());
  report(7, ok, detail);
}

TEST_CASE("criterion 8: benchmark CSVs are byte-identical across thread counts") {
  if (!g_bench.ran) {
    report(8, false, "criterion 6 did not run (benchmark data not present)");
    return;
  }
  BenchOptions serial, wide;
  serial.threads = 1;
  wide.threads = 8;
  const std::string cyc1 = run_bench(g_bench.cycle_specs, serial).csv;
  const std::string cyc8 = run_bench(g_bench.cycle_specs, wide).csv;
  const std::string roo1 = run_bench(g_bench.rooted_specs, serial).csv;
  const bool ok = cyc1 == g_bench.cycle_csv && cyc8 == g_bench.cycle_csv &&
                  roo1 == g_bench.rooted_csv;
  report(8, ok, ok ? "cycle and rooted CSVs identical at threads 1 and 8"
                   : "CSV output differs across runs/thread counts");
}
