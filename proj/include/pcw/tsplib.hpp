#pragma once

// TSPLIB instance loader (EUC_2D, CEIL_2D, ATT, GEO, and EXPLICIT matrices),
// the three node-reward generation schemes used by the benchmark study, a
// minimal point-to-point instance format, and the results CSV.

#include <cmath>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "pcw/metric.hpp"

namespace pcw {

enum class EdgeWeightType { Euc2d, Ceil2d, Att, Geo, Explicit };
enum class EdgeWeightFormat { None, FullMatrix, UpperRow, LowerRow, UpperDiagRow, LowerDiagRow };

struct TsplibInstance {
  std::string name;
  int dimension = 0;
  EdgeWeightType edge_weight_type = EdgeWeightType::Euc2d;
  EdgeWeightFormat edge_weight_format = EdgeWeightFormat::None;
  std::vector<std::pair<double, double>> coords;  // coordinate-based types only
  CostMatrix matrix;
  bool non_metric = false;
};

namespace detail {

inline double tsplib_nint(double x) { return std::floor(x + 0.5); }

inline double euc2d_distance(const std::pair<double, double>& a, const std::pair<double, double>& b) {
  const double dx = a.first - b.first, dy = a.second - b.second;
  return tsplib_nint(std::sqrt(dx * dx + dy * dy));
}

inline double ceil2d_distance(const std::pair<double, double>& a, const std::pair<double, double>& b) {
  const double dx = a.first - b.first, dy = a.second - b.second;
  return std::ceil(std::sqrt(dx * dx + dy * dy));
}

inline double att_distance(const std::pair<double, double>& a, const std::pair<double, double>& b) {
  const double dx = a.first - b.first, dy = a.second - b.second;
  const double rij = std::sqrt((dx * dx + dy * dy) / 10.0);
  const double tij = tsplib_nint(rij);
  return tij < rij ? tij + 1.0 : tij;
}

inline double geo_radians(double ddd_mm) {
  const double deg = std::trunc(ddd_mm);
  const double min = ddd_mm - deg;
  return 3.141592 * (deg + 5.0 * min / 3.0) / 180.0;
}

inline double geo_distance(const std::pair<double, double>& a, const std::pair<double, double>& b) {
  const double rrr = 6378.388;
  const double lat_i = geo_radians(a.first), lon_i = geo_radians(a.second);
  const double lat_j = geo_radians(b.first), lon_j = geo_radians(b.second);
  const double q1 = std::cos(lon_i - lon_j);
  const double q2 = std::cos(lat_i - lat_j);
  const double q3 = std::cos(lat_i + lat_j);
  return std::trunc(rrr * std::acos(0.5 * ((1.0 + q1) * q2 - (1.0 - q1) * q3)) + 1.0);
}

struct TokenStream {
  std::istringstream in;
  explicit TokenStream(std::string text) : in(std::move(text)) {}

  double number(const char* what) {
    double x;
    if (!(in >> x)) throw InputError(std::string("tsplib: expected a number in ") + what);
    return x;
  }
};

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace detail

inline TsplibInstance parse_tsplib(const std::string& text) {
  TsplibInstance inst;
  std::istringstream in(text);
  std::string line;
  bool have_ewt = false;
  std::string coord_block, weight_block;

  auto read_block = [&](int values) {
    std::string block;
    double seen = 0;
    while (seen < values && std::getline(in, line)) {
      block += line + "\n";
      std::istringstream count(line);
      double x;
      while (count >> x) ++seen;
    }
    if (seen < values) throw InputError("tsplib: data section ended early");
    return block;
  };

  while (std::getline(in, line)) {
    std::string t = detail::trim(line);
    if (t.empty()) continue;
    std::string key = t, value;
    const auto colon = t.find(':');
    if (colon != std::string::npos) {
      key = detail::trim(t.substr(0, colon));
      value = detail::trim(t.substr(colon + 1));
    }
    if (key == "NAME") {
      inst.name = value;
    } else if (key == "TYPE") {
      if (value != "TSP") throw InputError("tsplib: unsupported TYPE " + value);
    } else if (key == "COMMENT" || key == "NODE_COORD_TYPE" || key == "DISPLAY_DATA_TYPE") {
      // informational
    } else if (key == "DIMENSION") {
      inst.dimension = std::atoi(value.c_str());
      if (inst.dimension <= 0) throw InputError("tsplib: bad DIMENSION");
    } else if (key == "EDGE_WEIGHT_TYPE") {
      have_ewt = true;
      if (value == "EUC_2D")
        inst.edge_weight_type = EdgeWeightType::Euc2d;
      else if (value == "CEIL_2D")
        inst.edge_weight_type = EdgeWeightType::Ceil2d;
      else if (value == "ATT")
        inst.edge_weight_type = EdgeWeightType::Att;
      else if (value == "GEO")
        inst.edge_weight_type = EdgeWeightType::Geo;
      else if (value == "EXPLICIT")
        inst.edge_weight_type = EdgeWeightType::Explicit;
      else
        throw InputError("tsplib: unsupported EDGE_WEIGHT_TYPE " + value);
    } else if (key == "EDGE_WEIGHT_FORMAT") {
      if (value == "FULL_MATRIX")
        inst.edge_weight_format = EdgeWeightFormat::FullMatrix;
      else if (value == "UPPER_ROW")
        inst.edge_weight_format = EdgeWeightFormat::UpperRow;
      else if (value == "LOWER_ROW")
        inst.edge_weight_format = EdgeWeightFormat::LowerRow;
      else if (value == "UPPER_DIAG_ROW")
        inst.edge_weight_format = EdgeWeightFormat::UpperDiagRow;
      else if (value == "LOWER_DIAG_ROW")
        inst.edge_weight_format = EdgeWeightFormat::LowerDiagRow;
      else if (value == "FUNCTION")
        inst.edge_weight_format = EdgeWeightFormat::None;
      else
        throw InputError("tsplib: unsupported EDGE_WEIGHT_FORMAT " + value);
    } else if (key == "NODE_COORD_SECTION") {
      if (inst.dimension <= 0) throw InputError("tsplib: NODE_COORD_SECTION before DIMENSION");
      coord_block = read_block(3 * inst.dimension);
    } else if (key == "EDGE_WEIGHT_SECTION") {
      if (inst.dimension <= 0) throw InputError("tsplib: EDGE_WEIGHT_SECTION before DIMENSION");
      const int n = inst.dimension;
      int count = 0;
      switch (inst.edge_weight_format) {
        case EdgeWeightFormat::FullMatrix: count = n * n; break;
        case EdgeWeightFormat::UpperRow:
        case EdgeWeightFormat::LowerRow: count = n * (n - 1) / 2; break;
        case EdgeWeightFormat::UpperDiagRow:
        case EdgeWeightFormat::LowerDiagRow: count = n * (n + 1) / 2; break;
        case EdgeWeightFormat::None:
          throw InputError("tsplib: EDGE_WEIGHT_SECTION without EDGE_WEIGHT_FORMAT");
      }
      weight_block = read_block(count);
    } else if (key == "DISPLAY_DATA_SECTION") {
      if (inst.dimension <= 0) throw InputError("tsplib: DISPLAY_DATA_SECTION before DIMENSION");
      read_block(3 * inst.dimension);
    } else if (key == "EOF") {
      break;
    } else {
      throw InputError("tsplib: unsupported keyword " + key);
    }
  }

  if (!have_ewt) throw InputError("tsplib: missing EDGE_WEIGHT_TYPE");
  if (inst.dimension <= 0) throw InputError("tsplib: missing DIMENSION");
  const int n = inst.dimension;
  inst.matrix = CostMatrix(n);

  if (inst.edge_weight_type == EdgeWeightType::Explicit) {
    if (weight_block.empty()) throw InputError("tsplib: missing EDGE_WEIGHT_SECTION");
    detail::TokenStream ts(weight_block);
    auto put = [&](int i, int j) {
      const double x = ts.number("EDGE_WEIGHT_SECTION");
      if (i == j) {
        if (x != 0.0) throw InputError("tsplib: nonzero diagonal entry");
        return;
      }
      inst.matrix.set_symmetric(i, j, x);
    };
    switch (inst.edge_weight_format) {
      case EdgeWeightFormat::FullMatrix: {
        std::vector<double> all(static_cast<std::size_t>(n) * n);
        for (double& x : all) x = ts.number("EDGE_WEIGHT_SECTION");
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            const double x = all[static_cast<std::size_t>(i) * n + j];
            if (x != all[static_cast<std::size_t>(j) * n + i])
              throw InputError("tsplib: FULL_MATRIX is not symmetric");
            if (i == j && x != 0.0) throw InputError("tsplib: nonzero diagonal entry");
            if (i != j) inst.matrix.set_symmetric(i, j, x);
          }
        break;
      }
      case EdgeWeightFormat::UpperRow:
        for (int i = 0; i < n; ++i)
          for (int j = i + 1; j < n; ++j) put(i, j);
        break;
      case EdgeWeightFormat::LowerRow:
        for (int i = 1; i < n; ++i)
          for (int j = 0; j < i; ++j) put(i, j);
        break;
      case EdgeWeightFormat::UpperDiagRow:
        for (int i = 0; i < n; ++i)
          for (int j = i; j < n; ++j) put(i, j);
        break;
      case EdgeWeightFormat::LowerDiagRow:
        for (int i = 0; i < n; ++i)
          for (int j = 0; j <= i; ++j) put(i, j);
        break;
      case EdgeWeightFormat::None:
        throw InputError("tsplib: EXPLICIT requires EDGE_WEIGHT_FORMAT");
    }
  } else {
    if (coord_block.empty()) throw InputError("tsplib: missing NODE_COORD_SECTION");
    detail::TokenStream ts(coord_block);
    inst.coords.resize(n);
    std::vector<char> seen(n, 0);
    for (int k = 0; k < n; ++k) {
      const int id = static_cast<int>(ts.number("node id"));
      if (id < 1 || id > n || seen[id - 1]) throw InputError("tsplib: bad node id in coordinates");
      seen[id - 1] = 1;
      inst.coords[id - 1].first = ts.number("x coordinate");
      inst.coords[id - 1].second = ts.number("y coordinate");
    }
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        double d = 0.0;
        switch (inst.edge_weight_type) {
          case EdgeWeightType::Euc2d: d = detail::euc2d_distance(inst.coords[i], inst.coords[j]); break;
          case EdgeWeightType::Ceil2d: d = detail::ceil2d_distance(inst.coords[i], inst.coords[j]); break;
          case EdgeWeightType::Att: d = detail::att_distance(inst.coords[i], inst.coords[j]); break;
          case EdgeWeightType::Geo: d = detail::geo_distance(inst.coords[i], inst.coords[j]); break;
          case EdgeWeightType::Explicit: break;
        }
        inst.matrix.set_symmetric(i, j, d);
      }
  }

  inst.matrix.validate_symmetric();
  inst.non_metric = inst.matrix.violates_triangle();
  return inst;
}

// ---- reward generation (root = first node of the dataset) ----

namespace detail {
inline double gen2_reward(int j_one_based) {
  return 1.0 + static_cast<double>((7141LL * j_one_based + 73) % 100);
}
}  // namespace detail

// scheme 1: unit rewards; 2: pseudo-random; 3: proportional to the distance
// from the root. The root's reward is 0 in every scheme.
inline std::vector<double> generate_rewards(const TsplibInstance& inst, int scheme) {
  const int n = inst.dimension;
  std::vector<double> pi(n, 0.0);
  double dmax = 0.0;
  for (int v = 1; v < n; ++v) dmax = std::max(dmax, inst.matrix(0, v));
  for (int v = 1; v < n; ++v) {
    switch (scheme) {
      case 1: pi[v] = 1.0; break;
      case 2: pi[v] = detail::gen2_reward(v + 1); break;
      case 3: pi[v] = dmax > 0.0 ? 1.0 + std::floor(99.0 * inst.matrix(0, v) / dmax) : 1.0; break;
      default: throw InputError("generate_rewards: scheme must be 1, 2, or 3");
    }
  }
  return pi;
}

// ---- point-to-point instance files ----
//
//   # comment
//   COUNT <n>
//   START <1-based index>
//   END <1-based index>
//   <x> <y> <reward>          (n lines, file order = node ids)
struct P2pInstance {
  std::string name;
  std::vector<std::pair<double, double>> coords;
  std::vector<double> rewards;
  NodeId start = 0;
  NodeId end = 0;
  CostMatrix matrix;  // exact Euclidean distances
};

inline P2pInstance parse_p2p(const std::string& text) {
  P2pInstance inst;
  std::istringstream in(text);
  std::string line;
  int n = -1, start = -1, end = -1;
  while (std::getline(in, line)) {
    std::string t = detail::trim(line);
    if (t.empty() || t[0] == '#') continue;
    std::istringstream ls(t);
    std::string key;
    ls >> key;
    if (key == "COUNT") {
      if (!(ls >> n) || n <= 0) throw InputError("p2p: bad COUNT");
    } else if (key == "START") {
      if (!(ls >> start)) throw InputError("p2p: bad START");
    } else if (key == "END") {
      if (!(ls >> end)) throw InputError("p2p: bad END");
    } else if (key == "NAME") {
      ls >> inst.name;
    } else {
      if (n <= 0) throw InputError("p2p: COUNT must precede node lines");
      std::istringstream node(t);
      double x, y, reward;
      if (!(node >> x >> y >> reward)) throw InputError("p2p: bad node line");
      inst.coords.push_back({x, y});
      inst.rewards.push_back(reward);
    }
  }
  if (n <= 0 || static_cast<int>(inst.coords.size()) != n)
    throw InputError("p2p: node count mismatch");
  if (start < 1 || start > n || end < 1 || end > n)
    throw InputError("p2p: START/END out of range");
  inst.start = start - 1;
  inst.end = end - 1;
  inst.matrix = CostMatrix::from_points(inst.coords);
  return inst;
}

// ---- results CSV ----

struct ResultRow {
  std::string dataset;
  double budget = 0.0;
  double val = 0.0;
  std::optional<double> opt;
  double ub = 0.0;
};

namespace detail {

inline std::string fmt_value(double x) {
  if (x == std::floor(x) && std::abs(x) < 1e15) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%lld", static_cast<long long>(x));
    return buf;
  }
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  std::string s = buf;
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  return s;
}

inline std::string fmt_fixed3(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

struct RatioStat {
  double sum = 0.0, max = -kInf;
  int count = 0;

  void add(double printed) {
    sum += printed;
    max = std::max(max, printed);
    ++count;
  }
  std::string mean_str() const { return count ? fmt_fixed3(sum / count) : ""; }
  std::string max_str() const { return count ? fmt_fixed3(max) : ""; }
};

}  // namespace detail

// Emits the benchmark table: one row per instance with 3-decimal ratios and
// a footer with count/mean/max per ratio, computed from the printed values.
inline std::string emit_results(const std::vector<ResultRow>& rows) {
  std::ostringstream out;
  out << "Dataset,B,Val,Opt,UB,OptOverVal,UBOverOpt,UBOverVal\n";
  detail::RatioStat opt_over_val, ub_over_opt, ub_over_val;
  for (const ResultRow& row : rows) {
    out << row.dataset << ',' << detail::fmt_value(row.budget) << ',' << detail::fmt_value(row.val)
        << ',';
    if (row.opt) out << detail::fmt_value(*row.opt);
    out << ',' << detail::fmt_fixed3(row.ub) << ',';
    if (row.opt && row.val > 0.0) {
      const std::string s = detail::fmt_fixed3(*row.opt / row.val);
      opt_over_val.add(std::atof(s.c_str()));
      out << s;
    }
    out << ',';
    if (row.opt && *row.opt > 0.0) {
      const std::string s = detail::fmt_fixed3(row.ub / *row.opt);
      ub_over_opt.add(std::atof(s.c_str()));
      out << s;
    }
    out << ',';
    if (row.val > 0.0) {
      const std::string s = detail::fmt_fixed3(row.ub / row.val);
      ub_over_val.add(std::atof(s.c_str()));
      out << s;
    }
    out << '\n';
  }
  out << "# count," << rows.size() << '\n';
  out << "# mean,OptOverVal=" << opt_over_val.mean_str() << ",UBOverOpt=" << ub_over_opt.mean_str()
      << ",UBOverVal=" << ub_over_val.mean_str() << '\n';
  out << "# max,OptOverVal=" << opt_over_val.max_str() << ",UBOverOpt=" << ub_over_opt.max_str()
      << ",UBOverVal=" << ub_over_val.max_str() << '\n';
  return out.str();
}

// Reads rows back from emit_results output (footer lines are skipped).
inline std::vector<ResultRow> parse_results(const std::string& csv) {
  std::vector<ResultRow> rows;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    fields.resize(8);
    ResultRow row;
    row.dataset = fields[0];
    row.budget = std::atof(fields[1].c_str());
    row.val = std::atof(fields[2].c_str());
    if (!fields[3].empty()) row.opt = std::atof(fields[3].c_str());
    row.ub = std::atof(fields[4].c_str());
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace pcw
