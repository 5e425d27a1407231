// Copyright 2026 The cmfock Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file runner.hpp
 * @brief Experiment runner behind the `cmfock` command-line tool.
 *
 * A RunConfig is a subcommand plus flat string parameters, tolerances, a seed
 * and an output format.  run() evaluates the subcommand and returns a Report
 * (a table and a list of bound checks); render() turns it into CSV or JSON.
 * Nothing in the output depends on wall-clock time or thread count.
 */

#pragma once

#include "cmfock/bogoliubov.hpp"
#include "cmfock/cocycles.hpp"
#include "cmfock/crossmod.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

namespace cmfock::cli {

using nlohmann::json;

struct Option {
  std::string name;
  std::string fallback;
  std::string help;
};

struct RunConfig {
  std::string subcommand;
  std::map<std::string, std::string> params;
  std::map<std::string, double> tolerances;
  std::uint64_t seed = 1;
  std::string format = "json";
  std::string out;

  const std::string& param(const std::string& key) const {
    const auto it = params.find(key);
    if (it == params.end()) throw std::invalid_argument(subcommand + ": no parameter " + key);
    return it->second;
  }

  double tol(const std::string& key) const {
    const auto it = tolerances.find(key);
    if (it == tolerances.end()) throw std::invalid_argument(subcommand + ": no tolerance " + key);
    return it->second;
  }

  /// Every setting that affects the output, one "key=value" line each, sorted.  The output path is excluded.
  std::string canonical() const {
    std::ostringstream s;
    s << "subcommand=" << subcommand << "\nseed=" << seed << "\nformat=" << format << "\n";
    for (const auto& [k, v] : params) s << k << "=" << v << "\n";
    for (const auto& [k, v] : tolerances) s << "tol." << k << "=" << json(v).dump() << "\n";
    return s.str();
  }

  std::uint64_t fingerprint() const {
    const std::string c = canonical();
    return fnv1a(c.data(), c.size());
  }
};

inline const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"car-check", "hs-scan", "schwinger", "mf-check", "stokes-check",
                                              "crossmod-check"};
  return names;
}

inline const std::vector<Option>& options(const std::string& sub) {
  static const std::map<std::string, std::vector<Option>> table{
      {"car-check",
       {{"modes", "8", "minimum number of modes (rounded up to the nearest (2L+1)m)"},
        {"pairs", "200", "random vector pairs"}}},
      {"hs-scan",
       {{"d", "3", "torus dimension (1 or 3)"},
        {"g", "planewave", "planewave or constant"},
        {"k", "1,0,0", "plane-wave momentum"},
        {"m", "1", "fiber dimension"},
        {"cutoffs", "2..12", "cutoff list: a..b or comma separated"}}},
      {"schwinger",
       {{"k", "1", "current frequency"},
        {"cutoffs", "2..6", "cutoff list"},
        {"reference", "", "continuum value re,im to compare against (optional)"}}},
      {"mf-check",
       {{"preset", "su2-bump:1.5", "map whose Maurer-Cartan form is A"},
        {"resolution", "24", "radial resolution r (grid r x r x 2r); a list runs a refinement scan"},
        {"x", "x", "first argument"},
        {"y", "y", "second argument"},
        {"residual-args", "cx,cy,cz", "three arguments for the cocycle-condition residual"},
        {"epsilon", "auto", "gauge-flow step (auto: 0.6 / r)"}}},
      {"stokes-check",
       {{"resolution", "12,24", "radial resolutions"},
        {"args", "x,y,z", "generic triple"},
        {"constant-args", "cx,cy,cz", "triple constant near the boundary"}}},
      {"crossmod-check",
       {{"family", "quadratic", "identity or quadratic"},
        {"preset", "su2-bump:1.5", "based map g"},
        {"second", "harmonic:2,1", "second map for the one-cocycle identity"},
        {"outer", "flat-twist:1.0,0.7", "flattened map h for the outer automorphism"},
        {"point", "harmonic:1,0,1.5", "map f at whose potential everything is evaluated"},
        {"d", "1", "mode-space dimension"},
        {"cutoff", "2", "mode cutoff"},
        {"resolution", "12", "radial resolution"}}},
  };
  const auto it = table.find(sub);
  if (it == table.end()) throw std::invalid_argument("unknown subcommand: " + sub);
  return it->second;
}

inline std::map<std::string, double> default_tolerances(const std::string& sub) {
  static const std::map<std::string, std::map<std::string, double>> table{
      {"car-check", {{"car", 1e-12}, {"vacuum", 0.0}}},
      {"hs-scan", {{"constant", 0.0}, {"saturation", 0.0}, {"monotone", 0.0}, {"slope", 0.4}}},
      {"schwinger", {{"fock-vs-trace", 1e-12}, {"stability", 1e-12}, {"reference", 1e-6}}},
      {"mf-check", {{"antisymmetry", 0.0}, {"cocycle", 1e-5}, {"refinement", 2.0}}},
      {"stokes-check", {{"stokes", 1e-3}, {"boundary-constant", 0.0}}},
      {"crossmod-check",
       {{"eq3", 1e-8}, {"compat-one-particle", 1e-8}, {"compat-fock", 1e-8}, {"peiffer", 0.0},
        {"equivariance", 0.0}}},
  };
  return table.at(sub);
}

inline RunConfig make_config(const std::string& sub) {
  RunConfig c;
  c.subcommand = sub;
  for (const auto& o : options(sub)) c.params[o.name] = o.fallback;
  c.tolerances = default_tolerances(sub);
  return c;
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

inline double to_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw std::invalid_argument("not a number for " + what + ": '" + s + "'");
  return v;
}

inline int to_int(const std::string& s, const std::string& what) {
  const double v = to_double(s, what);
  if (v != std::floor(v) || std::abs(v) > 1e9) throw std::invalid_argument("not an integer for " + what + ": " + s);
  return static_cast<int>(v);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

/// "a..b" or "a,b,c".
inline std::vector<int> int_list(const std::string& s, const std::string& what) {
  std::vector<int> out;
  if (const auto dots = s.find(".."); dots != std::string::npos) {
    const int lo = to_int(s.substr(0, dots), what), hi = to_int(s.substr(dots + 2), what);
    if (hi < lo) throw std::invalid_argument("empty range for " + what);
    for (int v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  for (const auto& item : split(s, ',')) out.push_back(to_int(item, what));
  if (out.empty()) throw std::invalid_argument("empty list for " + what);
  return out;
}

inline Vector gaussian_vector(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> dist;
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = dist(rng);
    v(i) = cplx(re, dist(rng));
  }
  return v;
}

inline std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

}  // namespace detail

/// seed, format, out, tol.<name> or a subcommand parameter.
inline void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "seed") {
    const double v = detail::to_double(value, "seed");
    if (v < 0 || v != std::floor(v)) throw std::invalid_argument("seed must be a nonnegative integer");
    c.seed = static_cast<std::uint64_t>(std::stoull(value));
  } else if (key == "format" || key == "emit") {
    if (value != "csv" && value != "json") throw std::invalid_argument("format must be csv or json");
    c.format = value;
  } else if (key == "out") {
    c.out = value;
  } else if (key.rfind("tol.", 0) == 0) {
    const std::string name = key.substr(4);
    if (!c.tolerances.count(name)) throw std::invalid_argument(c.subcommand + ": unknown tolerance " + name);
    c.tolerances[name] = detail::to_double(value, key);
  } else {
    if (!c.params.count(key)) throw std::invalid_argument(c.subcommand + ": unknown setting " + key);
    c.params[key] = value;
  }
}

/// "name=value" as given to --tol.
inline void apply_tolerance(RunConfig& c, const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos) throw std::invalid_argument("--tol expects name=value, got " + spec);
  apply_setting(c, "tol." + detail::trim(spec.substr(0, eq)), detail::trim(spec.substr(eq + 1)));
}

/// Flat key=value file; '#' starts a comment.
inline void load_config_file(RunConfig& c, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = detail::trim(line.substr(0, eq)), value = detail::trim(line.substr(eq + 1));
    if (key == "subcommand") {
      if (value != c.subcommand) throw std::invalid_argument(path + ": config is for " + value);
      continue;
    }
    apply_setting(c, key, value);
  }
}

struct Check {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool lower = false;  ///< value must be >= bound instead of <= bound
  bool passed() const { return lower ? value >= bound : value <= bound; }
};

struct Report {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  std::vector<Check> checks;
  json notes = json::object();

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
  }
  void check(const RunConfig& c, const std::string& tol_name, double value, bool lower = false) {
    checks.push_back({tol_name, value, c.tol(tol_name), lower});
  }
};

inline json summary(const RunConfig& c, const Report& r) {
  json checks = json::array();
  for (const auto& k : r.checks)
    checks.push_back({{"name", k.name}, {"value", k.value}, {"bound", k.bound},
                      {"kind", k.lower ? "min" : "max"}, {"pass", k.passed()}});
  return {{"subcommand", c.subcommand}, {"config_fingerprint", detail::hex(c.fingerprint())},
          {"checks", std::move(checks)}, {"passed", r.passed()}};
}

namespace detail {

inline std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer() || v.is_boolean()) return v.dump();
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v.get<double>());
  return buf;
}

}  // namespace detail

inline std::string render_csv(const Report& r) {
  std::string out;
  for (std::size_t i = 0; i < r.columns.size(); ++i) out += (i ? "," : "") + r.columns[i];
  out += "\n";
  for (const auto& row : r.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? "," : "") + detail::csv_cell(row[i]);
    out += "\n";
  }
  return out;
}

inline std::string render_json(const RunConfig& c, const Report& r) {
  json config = {{"seed", c.seed}, {"params", c.params}, {"tolerances", c.tolerances}};
  json rows = json::array();
  for (const auto& row : r.rows) rows.push_back(row);
  json out = {{"subcommand", c.subcommand}, {"config", std::move(config)},
              {"config_fingerprint", detail::hex(c.fingerprint())}, {"columns", r.columns},
              {"rows", std::move(rows)}};
  if (r.rows.size() == 1) {
    json result = json::object();
    for (std::size_t i = 0; i < r.columns.size(); ++i) result[r.columns[i]] = r.rows[0][i];
    out["result"] = std::move(result);
  }
  if (!r.notes.empty()) out["notes"] = r.notes;
  out["summary"] = summary(c, r);
  return out.dump(2) + "\n";
}

inline std::string render(const RunConfig& c, const Report& r) {
  return c.format == "csv" ? render_csv(r) : render_json(c, r);
}

// ---------------------------------------------------------------------------
// Subcommands.

/// Smallest circle basis (2L+1)m with at least n modes, preferring m = 1.
inline modes::BasisPtr car_basis(int n) {
  if (n < 1) throw std::invalid_argument("car-check: modes must be positive");
  for (int size = std::max(n, 3); size <= fock::default_mode_cap; ++size)
    for (int m = 1; m <= size; ++m)
      if (size % m == 0 && (size / m) % 2 == 1 && size / m >= 3) return modes::ModeBasis::build(1, (size / m - 1) / 2, m);
  throw std::invalid_argument("car-check: no basis with " + std::to_string(n) + " modes fits the Fock cap");
}

inline Report car_check(const RunConfig& c) {
  const auto basis = car_basis(detail::to_int(c.param("modes"), "modes"));
  const int pairs = detail::to_int(c.param("pairs"), "pairs");
  if (pairs < 1) throw std::invalid_argument("car-check: pairs must be positive");
  const auto space = fock::FockSpace::create(basis);
  const auto n = static_cast<Eigen::Index>(basis->size());

  Report r;
  r.columns = {"pair", "mixed", "creation_pair", "annihilation_pair"};
  std::mt19937_64 rng(c.seed);
  double worst = 0.0;
  for (int p = 0; p < pairs; ++p) {
    const Vector u = detail::gaussian_vector(rng, n);
    const Vector v = detail::gaussian_vector(rng, n);
    const auto res = fock::check_car(space, u, v);
    worst = std::max(worst, res.max());
    r.rows.push_back({p, res.mixed, res.creation_pair, res.annihilation_pair});
  }
  r.notes = {{"modes", basis->size()}, {"cutoff", basis->cutoff()}, {"internal_dim", basis->internal_dim()}};
  r.check(c, "car", worst);
  r.check(c, "vacuum", fock::check_vacuum(space));
  return r;
}

inline Report hs_scan(const RunConfig& c) {
  const int d = detail::to_int(c.param("d"), "d");
  const int m = detail::to_int(c.param("m"), "m");
  const auto cutoffs = detail::int_list(c.param("cutoffs"), "cutoffs");
  const std::string kind = c.param("g");
  modes::TorusFunction g = [&] {
    if (kind == "planewave") {
      const auto k = detail::int_list(c.param("k"), "k");
      if (k.size() != 3) throw std::invalid_argument("hs-scan: k needs three components");
      return modes::TorusFunction::plane_wave(d, m, {k[0], k[1], k[2]});
    }
    if (kind == "constant") return modes::TorusFunction::constant(d, Matrix::Identity(m, m));
    throw std::invalid_argument("hs-scan: unknown map " + kind);
  }();
  const auto rows = modes::hs_growth_scan(g, cutoffs);

  Report r;
  r.columns = {"cutoff", "hs_norm"};
  for (const auto& row : rows) r.rows.push_back({row.cutoff, row.hs_norm});
  if (kind == "constant") {
    double worst = 0.0;
    for (const auto& row : rows) worst = std::max(worst, row.hs_norm);
    r.check(c, "constant", worst);
    return r;
  }
  if (d == 1) {
    const int band = g.bandwidth();
    double spread = 0.0;
    for (const auto& row : rows)
      if (row.cutoff >= band) spread = std::max(spread, std::abs(row.hs_norm - rows.back().hs_norm));
    r.check(c, "saturation", spread);
    return r;
  }
  double drops = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i)
    if (!(rows[i].hs_norm > rows[i - 1].hs_norm)) drops += 1.0;
  r.check(c, "monotone", drops);
  if (rows.size() >= 2) {
    const double slope = std::log(rows.back().hs_norm / rows.front().hs_norm) /
                         std::log(double(rows.back().cutoff) / rows.front().cutoff);
    r.notes["slope"] = slope;
    r.check(c, "slope", slope, true);
  }
  return r;
}

/// cos(k phi) and sin(k phi) as multiplication operators on the circle.
inline std::pair<modes::OneParticleOperator, modes::OneParticleOperator> circle_currents(const modes::BasisPtr& b,
                                                                                          int k) {
  auto make = [&](cplx up, cplx down) {
    const auto f = modes::TorusFunction::band_limited(
        1, 1, {{{k, 0, 0}, Matrix::Constant(1, 1, up)}, {{-k, 0, 0}, Matrix::Constant(1, 1, down)}});
    return modes::multiplication_operator(f, b);
  };
  return {make(0.5, 0.5), make(cplx(0.0, -0.5), cplx(0.0, 0.5))};
}

inline Report schwinger(const RunConfig& c) {
  const int k = detail::to_int(c.param("k"), "k");
  if (k < 1) throw std::invalid_argument("schwinger: k must be positive");
  const auto cutoffs = detail::int_list(c.param("cutoffs"), "cutoffs");
  Report r;
  r.columns = {"cutoff", "re", "im", "trace_re", "trace_im"};
  double agreement = 0.0, stability = 0.0;
  std::optional<cplx> settled;
  std::vector<cplx> values;
  for (int cutoff : cutoffs) {
    const auto b = modes::ModeBasis::build(1, cutoff, 1);
    const auto space = fock::FockSpace::create(b);
    const auto [x, y] = circle_currents(b, k);
    const auto v = bogoliubov::schwinger_term(space, x, y);
    agreement = std::max(agreement, std::abs(v.fock - v.trace));
    if (cutoff > k) {
      if (!settled) settled = v.fock;
      stability = std::max(stability, std::abs(v.fock - *settled));
    }
    values.push_back(v.fock);
    r.rows.push_back({cutoff, v.fock.real(), v.fock.imag(), v.trace.real(), v.trace.imag()});
  }
  r.check(c, "fock-vs-trace", agreement);
  r.check(c, "stability", stability);
  if (const auto& ref = c.param("reference"); !ref.empty()) {
    const auto parts = detail::split(ref, ',');
    if (parts.size() != 2) throw std::invalid_argument("schwinger: reference must be re,im");
    const cplx want(detail::to_double(parts[0], "reference"), detail::to_double(parts[1], "reference"));
    double rel = 0.0;
    for (std::size_t i = 0; i < cutoffs.size(); ++i)
      if (cutoffs[i] > k) rel = std::max(rel, std::abs(values[i] - want) / std::abs(want));
    r.check(c, "reference", rel);
  }
  return r;
}

inline geometry::GridPtr grid_at(int r) {
  if (r < 4) throw std::invalid_argument("resolution must be at least 4");
  return geometry::Grid::create(r, r, 2 * r);
}

inline Report mf_check(const RunConfig& c) {
  const auto preset = geometry::map_preset(c.param("preset"));
  const auto resolutions = detail::int_list(c.param("resolution"), "resolution");
  const auto args = detail::split(c.param("residual-args"), ',');
  if (args.size() != 3) throw std::invalid_argument("mf-check: residual-args needs three names");
  const int m = preset.fiber_dim;

  Report r;
  r.columns = {"resolution", "value", "antisymmetry_residual", "cocycle_residual"};
  double antisym = 0.0;
  std::vector<double> residuals;
  for (int res : resolutions) {
    const auto grid = grid_at(res);
    const auto a = geometry::maurer_cartan(geometry::sample(grid, preset));
    const auto x = geometry::algebra_field(grid, c.param("x"), m);
    const auto y = geometry::algebra_field(grid, c.param("y"), m);
    const auto xy = cocycles::mf_cocycle(a, x, y), yx = cocycles::mf_cocycle(a, y, x);
    const double a_res = std::abs(xy.value + yx.value);
    antisym = std::max(antisym, a_res);
    const double eps = c.param("epsilon") == "auto" ? 0.6 / res : detail::to_double(c.param("epsilon"), "epsilon");
    const double cres = cocycles::cocycle_residual(a, geometry::algebra_field(grid, args[0], m),
                                                   geometry::algebra_field(grid, args[1], m),
                                                   geometry::algebra_field(grid, args[2], m), {}, eps);
    residuals.push_back(cres);
    r.rows.push_back({res, xy.value.real(), a_res, cres});
  }
  r.check(c, "antisymmetry", antisym);
  r.check(c, "cocycle", residuals.back());
  if (residuals.size() >= 2) {
    double ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < residuals.size(); ++i) ratio = std::min(ratio, residuals[i - 1] / residuals[i]);
    r.check(c, "refinement", ratio, true);
  }
  return r;
}

inline Report stokes_check(const RunConfig& c) {
  const auto resolutions = detail::int_list(c.param("resolution"), "resolution");
  const auto names = detail::split(c.param("args"), ',');
  const auto constant = detail::split(c.param("constant-args"), ',');
  if (names.size() != 3 || constant.size() != 3) throw std::invalid_argument("stokes-check: triples need three names");
  Report r;
  r.columns = {"resolution", "boundary_re", "boundary_im", "stokes_re", "stokes_im", "relative_error"};
  double err = 0.0, vanishing = 0.0;
  for (int res : resolutions) {
    const auto grid = grid_at(res);
    auto f = [&](const std::string& n) { return geometry::algebra_field(grid, n, 2); };
    const auto x = f(names[0]), y = f(names[1]), z = f(names[2]);
    const cplx boundary = cocycles::coboundary_boundary_term(x, y, z);
    const cplx stokes = cocycles::coboundary_stokes(x, y, z);
    err = std::abs(stokes - boundary) / std::abs(boundary);
    vanishing = std::max(vanishing,
                         std::abs(cocycles::coboundary_boundary_term(f(constant[0]), f(constant[1]), f(constant[2]))));
    r.rows.push_back({res, boundary.real(), boundary.imag(), stokes.real(), stokes.imag(), err});
  }
  r.check(c, "stokes", err);
  r.check(c, "boundary-constant", vanishing);
  return r;
}

inline Report crossmod_check(const RunConfig& c) {
  using namespace crossmod;
  const auto grid = grid_at(detail::to_int(c.param("resolution"), "resolution"));
  const auto basis = modes::ModeBasis::build(detail::to_int(c.param("d"), "d"),
                                             detail::to_int(c.param("cutoff"), "cutoff"), 2);
  const std::string tag = c.param("family");
  const OmegaFamily family = tag == "identity"    ? OmegaFamily::identity(basis)
                             : tag == "quadratic" ? OmegaFamily::quadratic(basis)
                                                  : throw std::invalid_argument("crossmod-check: unknown family " + tag);
  const BallMap g = BallMap::preset(c.param("preset")), g2 = BallMap::preset(c.param("second"));
  const BallMap h = BallMap::preset(c.param("outer"));
  const SectionPoint point = SectionPoint::at(BallMap::preset(c.param("point")), grid);
  SpacePtr space;
  if (basis->size() <= static_cast<std::size_t>(fock::default_mode_cap)) space = fock::FockSpace::create(basis);

  std::mt19937_64 rng(c.seed);
  const Vector x = detail::gaussian_vector(rng, static_cast<Eigen::Index>(basis->size()));
  const double eq3 = check_one_cocycle(g, g2, point, family);
  const auto compat = compatibility_residual(h, g, point, x, family, space);
  const auto axioms = check_axioms(conjugation_module());

  Report r;
  r.columns = {"eq3_residual", "compat_one_particle", "compat_fock_mod_phase", "peiffer", "equivariance"};
  r.rows.push_back({eq3, compat.one_particle, compat.fock_mod_phase ? json(*compat.fock_mod_phase) : json(nullptr),
                    axioms.peiffer, axioms.equivariance});
  r.notes = {{"modes", basis->size()}, {"family", family.tag()}};
  r.check(c, "eq3", eq3);
  r.check(c, "compat-one-particle", compat.one_particle);
  if (compat.fock_mod_phase) r.check(c, "compat-fock", *compat.fock_mod_phase);
  r.check(c, "peiffer", axioms.peiffer);
  r.check(c, "equivariance", axioms.equivariance);
  return r;
}

inline Report run(const RunConfig& c) {
  if (c.subcommand == "car-check") return car_check(c);
  if (c.subcommand == "hs-scan") return hs_scan(c);
  if (c.subcommand == "schwinger") return schwinger(c);
  if (c.subcommand == "mf-check") return mf_check(c);
  if (c.subcommand == "stokes-check") return stokes_check(c);
  if (c.subcommand == "crossmod-check") return crossmod_check(c);
  throw std::invalid_argument("unknown subcommand: " + c.subcommand);
}

}  // namespace cmfock::cli
