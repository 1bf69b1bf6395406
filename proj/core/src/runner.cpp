// Copyright 2026 The geophase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "geophase/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>

#include "geophase/bell_chsh.hpp"
#include "geophase/error.hpp"
#include "geophase/polarimetry.hpp"

namespace geophase {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;
constexpr std::size_t kMinFitPoints = 8;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

const std::set<std::string> kTopLevelKeys{"schema_version", "scenario", "seed", "output", "analytic", "parameters"};

class Checker {
 public:
  explicit Checker(std::vector<Diagnostic>& out) : out_(out) {}

  void error(std::string path, std::string message) { out_.push_back({std::move(path), std::move(message)}); }
  bool ok() const noexcept { return out_.empty(); }

  void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
    for (const auto& [key, value] : obj.items()) {
      if (!allowed.contains(key)) error(join(path, key), "unknown key");
    }
  }

  static std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
  }

  std::optional<double> number(const json& j, const std::string& path) {
    if (!j.is_number()) {
      error(path, "expected a number");
      return std::nullopt;
    }
    return j.get<double>();
  }

  std::optional<double> angle(const json& j, const std::string& path) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
      const std::string s = j.get<std::string>();
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(s, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      std::string unit = s.substr(used);
      unit.erase(0, unit.find_first_not_of(' '));
      if (used > 0 && unit == "deg") return v * kPi / 180.0;
      if (used > 0 && unit == "rad") return v;
    }
    error(path, "expected an angle in radians, or a string with a 'deg' or 'rad' suffix");
    return std::nullopt;
  }

  std::optional<long long> integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) {
      error(path, "expected an integer");
      return std::nullopt;
    }
    return j.get<long long>();
  }

  /// Array of values or {start, stop, count, endpoint}.
  std::optional<std::vector<double>> grid(const json& j, const std::string& path, bool angles,
                                          bool default_endpoint = true) {
    auto value = [&](const json& v, const std::string& p) { return angles ? angle(v, p) : number(v, p); };
    std::vector<double> out;
    if (j.is_array()) {
      bool good = true;
      for (std::size_t i = 0; i < j.size(); ++i) {
        auto v = value(j[i], path + "[" + std::to_string(i) + "]");
        if (v) out.push_back(*v);
        else good = false;
      }
      if (out.empty() && good) {
        error(path, "grid is empty");
        return std::nullopt;
      }
      return good ? std::optional(out) : std::nullopt;
    }
    if (j.is_object()) {
      check_keys(j, path, {"start", "stop", "count", "endpoint"});
      std::optional<double> start, stop;
      std::optional<long long> count;
      bool endpoint = default_endpoint;
      if (!j.contains("start")) error(join(path, "start"), "missing required key");
      else start = value(j["start"], join(path, "start"));
      if (!j.contains("stop")) error(join(path, "stop"), "missing required key");
      else stop = value(j["stop"], join(path, "stop"));
      if (!j.contains("count")) error(join(path, "count"), "missing required key");
      else count = integer(j["count"], join(path, "count"));
      if (j.contains("endpoint")) {
        if (j["endpoint"].is_boolean()) endpoint = j["endpoint"].get<bool>();
        else error(join(path, "endpoint"), "expected a boolean");
      }
      if (count && *count < 1) {
        error(join(path, "count"), "count must be at least 1");
        return std::nullopt;
      }
      if (!start || !stop || !count) return std::nullopt;
      const long long n = *count;
      if (n == 1) return std::vector<double>{*start};
      const double step = (*stop - *start) / static_cast<double>(endpoint ? n - 1 : n);
      for (long long i = 0; i < n; ++i) out.push_back(*start + step * static_cast<double>(i));
      if (endpoint) out.back() = *stop;
      return out;
    }
    error(path, "expected a grid: an array or an object {start, stop, count, endpoint}");
    return std::nullopt;
  }

 private:
  std::vector<Diagnostic>& out_;
};

const json* find(const json& obj, const char* key) {
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

template <typename T>
void assign(std::optional<T> v, T& dst) {
  if (v) dst = *v;
}

std::vector<double> uniform_period(double period, std::size_t n) {
  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) g[i] = period * static_cast<double>(i) / static_cast<double>(n);
  return g;
}

void check_purities(Checker& c, const std::vector<double>& grid, const std::string& path, bool allow_zero) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    if (!(grid[i] >= 0.0 && grid[i] <= 1.0)) c.error(p, "purity out of [0,1]");
    else if (!allow_zero && grid[i] == 0.0) c.error(p, "purity must be nonzero for phase extraction");
  }
}

// `period` is the fringe period; a uniform grid omitting its endpoint still counts as a full cover.
void check_fit_grid(Checker& c, const std::vector<double>& grid, const std::string& path, double period) {
  if (grid.empty()) return;
  if (grid.size() < kMinFitPoints) {
    c.error(path, "fringe fit needs at least " + std::to_string(kMinFitPoints) + " points, got " +
                      std::to_string(grid.size()));
    return;
  }
  const auto [lo, hi] = std::minmax_element(grid.begin(), grid.end());
  const double span = (*hi - *lo) * static_cast<double>(grid.size()) / static_cast<double>(grid.size() - 1);
  if (span < period - 1e-9) c.error(path, "grid must cover at least one fringe period");
}

std::optional<double> positive(Checker& c, const json& params, const char* key, const std::string& base) {
  const json* j = find(params, key);
  if (!j) return std::nullopt;
  const std::string path = Checker::join(base, key);
  auto v = c.number(*j, path);
  if (v && !(*v > 0.0)) {
    c.error(path, "must be positive");
    return std::nullopt;
  }
  return v;
}

const json* required(Checker& c, const json& params, const char* key, const std::string& base) {
  const json* j = find(params, key);
  if (!j) c.error(Checker::join(base, key), "missing required key");
  return j;
}

PolarimeterPhaseParams parse_polarimeter(Checker& c, const json& p, const std::string& base) {
  c.check_keys(p, base, {"purity_grid", "delta_grid", "xi", "zeta", "eta_grid", "counts_per_point", "noise_sigma",
                         "repeats"});
  PolarimeterPhaseParams out;
  if (const json* j = required(c, p, "purity_grid", base)) {
    const std::string path = Checker::join(base, "purity_grid");
    assign(c.grid(*j, path, false), out.purity_grid);
    check_purities(c, out.purity_grid, path, false);
  }
  if (const json* j = required(c, p, "delta_grid", base)) assign(c.grid(*j, Checker::join(base, "delta_grid"), true), out.delta_grid);
  if (const json* j = find(p, "xi")) assign(c.angle(*j, Checker::join(base, "xi")), out.xi);
  if (const json* j = find(p, "zeta")) assign(c.angle(*j, Checker::join(base, "zeta")), out.zeta);
  if (const json* j = find(p, "eta_grid")) {
    const std::string path = Checker::join(base, "eta_grid");
    assign(c.grid(*j, path, true, false), out.eta_grid);
    check_fit_grid(c, out.eta_grid, path, kPi);
  } else {
    out.eta_grid = uniform_period(kTwoPi, 32);
  }
  assign(positive(c, p, "counts_per_point", base), out.counts_per_point);
  if (const json* j = find(p, "noise_sigma")) {
    const std::string path = Checker::join(base, "noise_sigma");
    auto v = c.angle(*j, path);
    if (v && *v < 0.0) c.error(path, "must be non-negative");
    else assign(v, out.noise_sigma);
  }
  if (const json* j = find(p, "repeats")) {
    const std::string path = Checker::join(base, "repeats");
    auto v = c.integer(*j, path);
    if (v && (*v < 1 || *v > 1000000)) c.error(path, "must be in [1, 1000000]");
    else if (v) out.repeats = static_cast<int>(*v);
  }
  return out;
}

NonAdditivityParams parse_non_additivity(Checker& c, const json& p, const std::string& base) {
  c.check_keys(p, base, {"purity_grid", "phi_g", "phi_d"});
  NonAdditivityParams out;
  if (const json* j = required(c, p, "purity_grid", base)) {
    const std::string path = Checker::join(base, "purity_grid");
    assign(c.grid(*j, path, false), out.purity_grid);
    check_purities(c, out.purity_grid, path, false);
  }
  std::optional<double> g, d;
  if (const json* j = required(c, p, "phi_g", base)) g = c.angle(*j, Checker::join(base, "phi_g"));
  if (const json* j = required(c, p, "phi_d", base)) d = c.angle(*j, Checker::join(base, "phi_d"));
  if (g && d) {
    out.phi_g = *g;
    out.phi_d = *d;
    try {
      (void)non_additivity_report(*g, *d, 1.0);
    } catch (const Error& e) {
      c.error(base, e.what());
    }
  }
  return out;
}

InterferogramParams parse_interferogram(Checker& c, const json& p, const std::string& base) {
  c.check_keys(p, base, {"phi_i_grid", "phi_ii", "polarization", "analysis_delta", "chi_grid", "counts_per_point"});
  InterferogramParams out;
  if (const json* j = required(c, p, "phi_i_grid", base)) {
    const std::string path = Checker::join(base, "phi_i_grid");
    assign(c.grid(*j, path, true), out.phi_i_grid);
    if (!out.phi_i_grid.empty() && out.phi_i_grid.size() < 2) c.error(path, "slope fit needs at least 2 points");
  }
  if (const json* j = find(p, "phi_ii")) assign(c.angle(*j, Checker::join(base, "phi_ii")), out.phi_ii);
  if (const json* j = find(p, "analysis_delta")) {
    assign(c.angle(*j, Checker::join(base, "analysis_delta")), out.analysis_delta);
  }
  if (const json* j = find(p, "polarization")) {
    const std::string path = Checker::join(base, "polarization");
    if (j->is_string() && j->get<std::string>() == "up") out.polarization = Polarization::Up;
    else if (j->is_string() && j->get<std::string>() == "down") out.polarization = Polarization::Down;
    else c.error(path, "expected \"up\" or \"down\"");
  }
  if (const json* j = find(p, "chi_grid")) {
    const std::string path = Checker::join(base, "chi_grid");
    assign(c.grid(*j, path, true, false), out.chi_grid);
    check_fit_grid(c, out.chi_grid, path, kTwoPi);
  } else {
    out.chi_grid = uniform_period(kTwoPi, 64);
  }
  assign(positive(c, p, "counts_per_point", base), out.counts_per_point);
  return out;
}

ChshParams parse_chsh(Checker& c, const json& p, const std::string& base, bool polar) {
  std::set<std::string> keys{"gamma_grid", "total_counts"};
  if (polar) keys.insert("method");
  c.check_keys(p, base, keys);
  ChshParams out;
  if (const json* j = required(c, p, "gamma_grid", base)) {
    assign(c.grid(*j, Checker::join(base, "gamma_grid"), true), out.gamma_grid);
  }
  if (const json* j = find(p, "total_counts")) {
    const std::string path = Checker::join(base, "total_counts");
    auto v = c.number(*j, path);
    if (v && !(*v >= 1.0 && std::floor(*v) == *v)) c.error(path, "must be a positive whole number");
    else assign(v, out.total_counts);
  }
  if (const json* j = find(p, "method")) {
    const std::string path = Checker::join(base, "method");
    if (j->is_string() && j->get<std::string>() == "numerical") out.numerical = true;
    else if (j->is_string() && j->get<std::string>() == "closed_form") out.numerical = false;
    else c.error(path, "expected \"numerical\" or \"closed_form\"");
  }
  return out;
}

std::optional<Scenario> scenario_from(const std::string& s) {
  for (auto sc : {Scenario::PolarimeterPhase, Scenario::NonAdditivity, Scenario::Interferogram, Scenario::ChshPolar,
                  Scenario::ChshAzimuthal}) {
    if (to_string(sc) == s) return sc;
  }
  return std::nullopt;
}

json apply_overrides(json j, const Overrides& o) {
  if (!j.is_object()) return j;
  if (o.seed) j["seed"] = *o.seed;
  if (o.output_path) j["output"] = *o.output_path;
  if (o.analytic) j["analytic"] = true;
  return j;
}

std::optional<json> parse_json(std::string_view text, std::vector<Diagnostic>& diags) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    diags.push_back({"", std::string("malformed JSON: ") + e.what()});
    return std::nullopt;
  }
}

ExperimentConfig check_document(const json& j, std::vector<Diagnostic>& diags) {
  Checker c(diags);
  ExperimentConfig cfg;
  if (!j.is_object()) {
    c.error("", "config must be a JSON object");
    return cfg;
  }
  c.check_keys(j, "", kTopLevelKeys);

  if (const json* v = required(c, j, "schema_version", "")) {
    if (!v->is_number_integer() || v->get<long long>() != kSchemaVersion) {
      c.error("schema_version", "unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");
    }
  }
  std::optional<Scenario> scenario;
  if (const json* v = required(c, j, "scenario", "")) {
    if (v->is_string()) scenario = scenario_from(v->get<std::string>());
    if (!scenario) {
      c.error("scenario",
              "expected one of polarimeter_phase, non_additivity, interferogram, chsh_polar, chsh_azimuthal");
    }
  }
  if (const json* v = find(j, "seed")) {
    if (v->is_number_unsigned()) cfg.seed = v->get<std::uint64_t>();
    else if (v->is_number_integer() && v->get<long long>() >= 0) cfg.seed = static_cast<std::uint64_t>(v->get<long long>());
    else c.error("seed", "expected a non-negative integer");
  }
  if (const json* v = find(j, "output")) {
    if (v->is_string() && !v->get<std::string>().empty()) cfg.output_path = v->get<std::string>();
    else c.error("output", "expected a non-empty path string");
  }
  if (const json* v = find(j, "analytic")) {
    if (v->is_boolean()) cfg.analytic = v->get<bool>();
    else c.error("analytic", "expected a boolean");
  }

  const json* params = required(c, j, "parameters", "");
  if (params && !params->is_object()) {
    c.error("parameters", "expected an object");
    params = nullptr;
  }
  if (params && scenario) {
    cfg.scenario = *scenario;
    switch (*scenario) {
      case Scenario::PolarimeterPhase:
        cfg.params = parse_polarimeter(c, *params, "parameters");
        break;
      case Scenario::NonAdditivity:
        cfg.params = parse_non_additivity(c, *params, "parameters");
        break;
      case Scenario::Interferogram:
        cfg.params = parse_interferogram(c, *params, "parameters");
        break;
      case Scenario::ChshPolar:
        cfg.params = parse_chsh(c, *params, "parameters", true);
        break;
      case Scenario::ChshAzimuthal:
        cfg.params = parse_chsh(c, *params, "parameters", false);
        break;
    }
  }
  cfg.canonical = j.dump();
  return cfg;
}

[[noreturn]] void throw_invalid(const std::vector<Diagnostic>& diags, const std::string& prefix = {}) {
  std::string msg = prefix;
  for (std::size_t i = 0; i < diags.size(); ++i) {
    if (i > 0 || !msg.empty()) msg += "; ";
    msg += diags[i].str();
  }
  throw Error(ErrorCode::ConfigInvalid, msg);
}

// splitmix64 finalizer: decorrelates per-cell streams derived from one seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (a + 1) + 0xBF58476D1CE4E5B9ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

ResultTable run_polarimeter(const ExperimentConfig& cfg, const PolarimeterPhaseParams& p) {
  ResultTable t;
  t.columns = {"purity", "delta", "phi_theory", "phi_estimate", "phi_sigma", "runs_ok"};
  const double shrink = std::exp(-0.5 * p.noise_sigma * p.noise_sigma);
  const int runs = cfg.analytic ? 1 : p.repeats;
  for (std::size_t i = 0; i < p.purity_grid.size(); ++i) {
    for (std::size_t k = 0; k < p.delta_grid.size(); ++k) {
      const double r = p.purity_grid[i];
      const double delta = p.delta_grid[k];
      PolarimeterConfig pc;
      pc.params = Su2Params(p.xi, delta, p.zeta);
      pc.purity = r;
      pc.eta_grid = p.eta_grid;
      pc.counts_per_point = p.counts_per_point;
      pc.analytic = cfg.analytic;
      NoiseModel noise;
      if (p.noise_sigma > 0.0) noise = {NoiseKind::AngleJitter, p.noise_sigma, 0};
      double sum = 0.0;
      double sigma_sum = 0.0;
      int ok = 0;
      for (int run = 0; run < runs; ++run) {
        pc.rng_seed = derive_seed(cfg.seed, i * p.delta_grid.size() + k, static_cast<std::uint64_t>(run));
        try {
          const FringeScan scan = simulate_fringe_scan(pc, noise);
          sum += extract_phase(scan.stats, scan.effective_purity);
          sigma_sum += cfg.analytic ? 0.0 : extract_phase_sigma(scan);
          ++ok;
        } catch (const Error& e) {
          if (e.code() != ErrorCode::FitFailure && e.code() != ErrorCode::OutOfDomain) throw;
        }
      }
      const double theory = std::abs(mixed_phase_theory(r * shrink, delta));
      t.add_row({r, delta, theory, ok > 0 ? sum / ok : kNaN, ok > 0 ? sigma_sum / ok : kNaN, static_cast<double>(ok)});
    }
  }
  return t;
}

ResultTable run_non_additivity(const NonAdditivityParams& p) {
  ResultTable t;
  t.columns = {"r", "Phi_g", "Phi_d", "Phi_tot", "sum", "gap"};
  for (double r : p.purity_grid) {
    const NonAdditivityReport rep = non_additivity_report(p.phi_g, p.phi_d, r);
    t.add_row({r, rep.phi_g, rep.phi_d, rep.phi_tot, rep.sum, rep.gap()});
  }
  return t;
}

ResultTable run_interferogram(const ExperimentConfig& cfg, const InterferogramParams& p) {
  InterferometerScan scan;
  scan.chi_grid = p.chi_grid;
  scan.phi_ii = p.phi_ii;
  scan.initial_polarization = p.polarization;
  scan.analysis_delta = p.analysis_delta;
  const PhaseSlope slope =
      fringe_phase_slope(scan, p.phi_i_grid, cfg.analytic ? 0.0 : p.counts_per_point, derive_seed(cfg.seed, 0));
  ResultTable t;
  t.columns = {"phi_I", "fringe_phase", "slope_fit"};
  for (std::size_t i = 0; i < slope.phi_i.size(); ++i) {
    t.add_row({slope.phi_i[i], slope.fringe_phase[i], slope.line.intercept + slope.line.slope * slope.phi_i[i]});
  }
  t.metadata.push_back("slope: " + format_number(slope.line.slope));
  t.metadata.push_back("slope_sigma: " + format_number(slope.line.slope_sigma));
  t.metadata.push_back("intercept: " + format_number(slope.line.intercept));
  return t;
}

double s_from_counts(const BellSetting& s, double gamma, double total, std::uint64_t seed) {
  const std::array<std::pair<ProjectorAngles, ProjectorAngles>, 4> pairs{
      {{s.alpha, s.beta}, {s.alpha, s.beta_p}, {s.alpha_p, s.beta}, {s.alpha_p, s.beta_p}}};
  std::array<CountRates, 4> counts;
  for (std::size_t k = 0; k < 4; ++k) {
    counts[k] = simulate_counts(pairs[k].first, pairs[k].second, gamma, total, derive_seed(seed, k));
  }
  return s_value(counts);
}

ResultTable run_chsh(const ExperimentConfig& cfg, const ChshParams& p, bool polar) {
  ResultTable t;
  t.columns = polar ? std::vector<std::string>{"gamma", "S", "beta1", "beta1p"}
                    : std::vector<std::string>{"gamma", "S", "alpha2p", "S_uncorrected"};
  for (std::size_t i = 0; i < p.gamma_grid.size(); ++i) {
    const double gamma = p.gamma_grid[i];
    const AdjustmentResult adj =
        polar ? (p.numerical ? numerical_polar_max(gamma) : polar_adjust(gamma)) : azimuthal_adjust(gamma);
    double s = adj.s_value;
    double s_plain = s_value(BellSetting::standard(), gamma);
    if (!cfg.analytic) {
      s = s_from_counts(adj.angles, gamma, p.total_counts, derive_seed(cfg.seed, i, 0));
      s_plain = s_from_counts(BellSetting::standard(), gamma, p.total_counts, derive_seed(cfg.seed, i, 1));
    }
    if (polar) t.add_row({gamma, s, adj.beta1, adj.beta1_p});
    else t.add_row({gamma, s, adj.alpha2_p, s_plain});
  }
  return t;
}

ResultTable execute(const ExperimentConfig& cfg) {
  ResultTable t = std::visit(
      [&](const auto& p) -> ResultTable {
        using P = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<P, PolarimeterPhaseParams>) return run_polarimeter(cfg, p);
        else if constexpr (std::is_same_v<P, NonAdditivityParams>) return run_non_additivity(p);
        else if constexpr (std::is_same_v<P, InterferogramParams>) return run_interferogram(cfg, p);
        else return run_chsh(cfg, p, cfg.scenario == Scenario::ChshPolar);
      },
      cfg.params);
  std::vector<std::string> meta{
      "geophase_version: " GEOPHASE_VERSION_STRING,
      "scenario: " + std::string(to_string(cfg.scenario)),
      "seed: " + std::to_string(cfg.seed),
      std::string("analytic: ") + (cfg.analytic ? "true" : "false"),
      "config: " + cfg.canonical,
  };
  meta.insert(meta.end(), t.metadata.begin(), t.metadata.end());
  t.metadata = std::move(meta);
  return t;
}

void write_to(const ResultTable& t, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot open '" + path + "' for writing");
  write_table(t, out);
  out.flush();
  if (!out) throw Error(ErrorCode::IoFailure, "failed writing '" + path + "'");
}

}  // namespace

std::string_view to_string(Scenario s) noexcept {
  switch (s) {
    case Scenario::PolarimeterPhase:
      return "polarimeter_phase";
    case Scenario::NonAdditivity:
      return "non_additivity";
    case Scenario::Interferogram:
      return "interferogram";
    case Scenario::ChshPolar:
      return "chsh_polar";
    case Scenario::ChshAzimuthal:
      return "chsh_azimuthal";
  }
  return "unknown";
}

std::string Diagnostic::str() const { return path.empty() ? message : path + ": " + message; }

std::vector<Diagnostic> validate(std::string_view text, const Overrides& overrides) {
  std::vector<Diagnostic> diags;
  if (auto j = parse_json(text, diags)) (void)check_document(apply_overrides(std::move(*j), overrides), diags);
  return diags;
}

ExperimentConfig parse_config(std::string_view text, const Overrides& overrides) {
  std::vector<Diagnostic> diags;
  auto j = parse_json(text, diags);
  if (!j) throw_invalid(diags);
  ExperimentConfig cfg = check_document(apply_overrides(std::move(*j), overrides), diags);
  if (!diags.empty()) throw_invalid(diags);
  return cfg;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void ResultTable::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) {
    throw Error(ErrorCode::InvalidArgument, "row has " + std::to_string(row.size()) + " cells, table has " +
                                                std::to_string(columns.size()) + " columns");
  }
  rows.push_back(std::move(row));
}

void write_table(const ResultTable& table, std::ostream& out) {
  for (const auto& m : table.metadata) out << "# " << m << '\n';
  const bool labelled = !table.label_column.empty();
  if (labelled) out << table.label_column << '\t';
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "\t" : "") << table.columns[c];
  out << '\n';
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    if (labelled) out << table.labels[r] << '\t';
    for (std::size_t c = 0; c < table.rows[r].size(); ++c) out << (c ? "\t" : "") << format_number(table.rows[r][c]);
    out << '\n';
  }
}

std::string format_table(const ResultTable& table) {
  std::ostringstream ss;
  write_table(table, ss);
  return ss.str();
}

ResultTable run(const ExperimentConfig& config) {
  ResultTable t = execute(config);
  if (config.output_path) {
    write_to(t, *config.output_path);
    t.written_to = config.output_path;
  }
  return t;
}

ResultTable sweep(std::string_view text, const std::string& key, const std::vector<std::string>& values,
                  const Overrides& overrides) {
  std::vector<Diagnostic> diags;
  auto base = parse_json(text, diags);
  if (!base) throw_invalid(diags);
  if (!base->is_object()) throw_invalid({{"", "config must be a JSON object"}});
  if (values.empty()) throw Error(ErrorCode::ConfigInvalid, "sweep needs at least one value");

  std::vector<std::string> parts;
  {
    std::stringstream ss(key);
    for (std::string part; std::getline(ss, part, '.');) {
      if (part.empty()) throw Error(ErrorCode::ConfigInvalid, "malformed sweep key '" + key + "'");
      parts.push_back(part);
    }
  }
  if (parts.empty()) throw Error(ErrorCode::ConfigInvalid, "empty sweep key");
  if (!kTopLevelKeys.contains(parts.front())) parts.insert(parts.begin(), "parameters");

  const json effective_base = apply_overrides(*base, overrides);
  ResultTable combined;
  combined.label_column = key;
  std::optional<std::string> output;
  for (const auto& raw : values) {
    json doc = *base;
    json* node = &doc;
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
      if (!node->contains(parts[i])) (*node)[parts[i]] = json::object();
      node = &(*node)[parts[i]];
      if (!node->is_object()) throw Error(ErrorCode::ConfigInvalid, "sweep key '" + key + "' crosses a non-object");
    }
    json value = json::parse(raw, nullptr, false);
    if (value.is_discarded()) value = raw;
    (*node)[parts.back()] = value;

    std::vector<Diagnostic> d;
    ExperimentConfig cfg = check_document(apply_overrides(std::move(doc), overrides), d);
    if (!d.empty()) throw_invalid(d, "sweep value '" + raw + "'");
    output = cfg.output_path;
    cfg.output_path.reset();

    ResultTable t = execute(cfg);
    if (combined.columns.empty()) {
      combined.columns = t.columns;
      combined.metadata = {
          "geophase_version: " GEOPHASE_VERSION_STRING,
          "scenario: " + std::string(to_string(cfg.scenario)),
          "seed: " + std::to_string(cfg.seed),
          std::string("analytic: ") + (cfg.analytic ? "true" : "false"),
          "config: " + effective_base.dump(),
          "sweep_param: " + key,
      };
    }
    if (t.columns != combined.columns) throw Error(ErrorCode::ConfigInvalid, "sweep changed the table layout");
    for (auto& row : t.rows) {
      combined.labels.push_back(raw);
      combined.add_row(std::move(row));
    }
    // Per-value extras (e.g. fitted slopes) follow the run metadata.
    for (std::size_t i = 5; i < t.metadata.size(); ++i) combined.metadata.push_back(raw + " " + t.metadata[i]);
  }
  if (output) {
    write_to(combined, *output);
    combined.written_to = output;
  }
  return combined;
}

}  // namespace geophase
