#include <filesystem>
#include <fstream>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "pcw/bench.hpp"

using namespace pcw;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir() {
  fs::path dir = fs::temp_directory_path() / "pcw_bench_test";
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

// Small EUC_2D instance with integer coordinates on a fixed seed.
std::string synthetic_tsp(const std::string& name, int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coord(0, 60);
  std::ostringstream out;
  out << "NAME : " << name << "\nTYPE : TSP\nDIMENSION : " << n
      << "\nEDGE_WEIGHT_TYPE : EUC_2D\nNODE_COORD_SECTION\n";
  for (int i = 1; i <= n; ++i) out << i << ' ' << coord(rng) << ' ' << coord(rng) << '\n';
  out << "EOF\n";
  return out.str();
}

std::string synthetic_p2p(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> coord(0, 40);
  std::uniform_int_distribution<int> reward(1, 9);
  std::ostringstream out;
  out << "COUNT " << n << "\nSTART 1\nEND " << n << "\n";
  for (int i = 0; i < n; ++i)
    out << coord(rng) << ' ' << coord(rng) << ' ' << reward(rng) << '\n';
  return out.str();
}

}  // namespace

TEST_CASE("manifest parsing accepts optional fields") {
  auto specs = parse_manifest(
      "# comment\n"
      "a.tsp,100,1,cycle\n"
      "b.tsp,200,3,rooted,42\n"
      "c.p2p,0,0,p2p,,15.5\n");
  REQUIRE(specs.size() == 3);
  CHECK(specs[0].variant == BenchVariant::Cycle);
  CHECK(!specs[0].known_opt);
  CHECK(specs[1].known_opt == 42.0);
  CHECK(specs[2].variant == BenchVariant::P2p);
  CHECK(specs[2].budget == 15.5);
  CHECK_THROWS_AS(parse_manifest("x.tsp,1,1\n"), InputError);
  CHECK_THROWS_AS(parse_manifest("x.tsp,1,1,hexagon\n"), InputError);
}

TEST_CASE("bench rows sandwich the brute-force optimum") {
  fs::path dir = temp_dir();
  std::vector<BenchRowSpec> specs;
  for (int k = 0; k < 3; ++k) {
    const std::string name = "syn" + std::to_string(k);
    const fs::path file = dir / (name + ".tsp");
    write_file(file, synthetic_tsp(name, 7, 9000 + k));
    TsplibInstance tsp = parse_tsplib(detail::read_file(file.string()));
    const long long pseudo_tsp_opt = 140 + 11 * k;  // drives B = ceil(opt/2)
    const double budget = std::ceil(pseudo_tsp_opt / 2.0);
    for (int gen = 1; gen <= 3; ++gen) {
      std::vector<double> pi = generate_rewards(tsp, gen);
      const double opt_cycle = pcw::test::best_cycle(tsp.matrix, pi, 0, budget);
      const double opt_rooted = pcw::test::best_rooted_path(tsp.matrix, pi, 0, budget);
      specs.push_back({file.string(), pseudo_tsp_opt, gen, BenchVariant::Cycle, opt_cycle, {}});
      specs.push_back({file.string(), pseudo_tsp_opt, gen, BenchVariant::Rooted, opt_rooted, {}});
    }
  }
  BenchOptions options;
  options.threads = 2;
  BenchOutput out = run_bench(specs, options);
  REQUIRE(out.rows.size() == specs.size());
  for (const ResultRow& row : out.rows) {
    REQUIRE(row.opt.has_value());
    CHECK(row.val <= *row.opt + 1e-9);
    CHECK(*row.opt <= row.ub + 1e-6);
  }
}

TEST_CASE("bench handles p2p rows") {
  fs::path dir = temp_dir();
  const fs::path file = dir / "toy.p2p";
  write_file(file, synthetic_p2p(7, 7100));
  P2pInstance p2p = parse_p2p(detail::read_file(file.string()));
  const double budget = p2p.matrix(p2p.start, p2p.end) * 1.8;
  const double opt = pcw::test::best_p2p_path(p2p.matrix, p2p.rewards, p2p.start, p2p.end, budget);
  BenchOutput out = run_bench({{file.string(), 0, 0, BenchVariant::P2p, opt, budget}}, {});
  REQUIRE(out.rows.size() == 1);
  CHECK(out.rows[0].val <= opt + 1e-9);
  CHECK(opt <= out.rows[0].ub + 1e-6);
  CHECK_THROWS_AS(run_bench({{file.string(), 0, 0, BenchVariant::P2p, {}, {}}}, {}), InputError);
}

TEST_CASE("bench output is byte-identical across thread counts") {
  fs::path dir = temp_dir();
  std::vector<BenchRowSpec> specs;
  for (int k = 0; k < 4; ++k) {
    const std::string name = "det" + std::to_string(k);
    const fs::path file = dir / (name + ".tsp");
    write_file(file, synthetic_tsp(name, 9, 7500 + k));
    specs.push_back({file.string(), 150 + 7 * k, 1 + (k % 3), BenchVariant::Cycle, {}, {}});
    specs.push_back({file.string(), 150 + 7 * k, 1 + (k % 3), BenchVariant::Rooted, {}, {}});
  }
  BenchOptions serial, wide;
  serial.threads = 1;
  wide.threads = 8;
  const std::string a = run_bench(specs, serial).csv;
  const std::string b = run_bench(specs, wide).csv;
  const std::string c = run_bench(specs, wide).csv;
  CHECK(a == b);
  CHECK(b == c);
  CHECK(a.find("Dataset,B,Val,Opt,UB") == 0);
}

TEST_CASE("missing dataset files are reported") {
  CHECK_THROWS_AS(run_bench({{"/nonexistent/zzz.tsp", 10, 1, BenchVariant::Cycle, {}, {}}}, {}),
                  InputError);
}

TEST_CASE("worker exceptions surface on the calling thread") {
  std::vector<BenchRowSpec> specs(6, {"/nonexistent/zzz.tsp", 10, 1, BenchVariant::Cycle, {}, {}});
  BenchOptions options;
  options.threads = 4;
  CHECK_THROWS_AS(run_bench(specs, options), InputError);
}
