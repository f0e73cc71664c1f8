#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chtorus/errors.hpp"
#include "chtorus/field.hpp"
#include "chtorus/grid.hpp"
#include "chtorus/inertia.hpp"
#include "chtorus/state.hpp"

// Scenario configuration: the user-facing description of one run.  Parsed
// from a JSON document, overridable by command-line flags, validated before
// any compute starts.

namespace chtorus {

enum class RunMode { simulate, geodesic, curvature, verify_b, selftest };

inline RunMode mode_from_string(const std::string& s) {
  if (s == "simulate") return RunMode::simulate;
  if (s == "geodesic") return RunMode::geodesic;
  if (s == "curvature") return RunMode::curvature;
  if (s == "verify-b") return RunMode::verify_b;
  if (s == "selftest") return RunMode::selftest;
  throw ConfigError("unknown mode: " + s);
}

inline std::string to_string(RunMode m) {
  switch (m) {
    case RunMode::simulate: return "simulate";
    case RunMode::geodesic: return "geodesic";
    case RunMode::curvature: return "curvature";
    case RunMode::verify_b: return "verify-b";
    case RunMode::selftest: return "selftest";
  }
  return "?";
}

// One trigonometric term of the initial condition:
//   amplitude * trig(2*pi k.x + phase)
// added to the chosen component of the velocity or density block.
struct IcTerm {
  std::string field = "u";  // "u" or "rho"
  int component = 0;        // 0-based block component
  std::vector<int> k;       // integer wavevector (one entry per dimension)
  double amplitude = 0.0;
  double phase = 0.0;
  std::string kind = "cos";  // "cos" or "sin"
};

struct ScenarioConfig {
  RunMode mode = RunMode::simulate;
  int alpha = 0;
  int beta = 1;
  int gamma = 0;
  int dim = 1;
  int grid_n = 128;
  double dt = 1e-3;
  double t_max = 1.0;
  std::vector<IcTerm> ic;
  std::string out_dir = "out";
  bool dealias = true;
  std::vector<int> k_range = {1, 2, 3};       // curvature mode (multiples of 2*pi)
  std::vector<double> b_list = {2, 3, 4, 5};  // verify-b mode
  std::array<int, 2> n_vec = {1, 1};          // verify-b mode lattice point
  std::uint64_t seed = 12345;

  template <class Real = double>
  ModelParams<Real> params() const {
    ModelParams<Real> mp;
    mp.alpha = alpha;
    mp.beta = beta;
    mp.gamma = gamma;
    mp.dim = dim;
    return mp;
  }
};

// Equation names per admissible parameter cell; gamma = 1 adds the density
// block ("2" prefix for two-component).
inline std::string equation_name(int alpha, int beta, int gamma) {
  if (alpha == 0 && beta == 0) return gamma ? "2HS" : "HS";
  if (alpha == 0 && beta == 1) return gamma ? "2CH" : "CH";
  if (alpha == 1 && beta == 0) return gamma ? "mu-2CH" : "mu-CH";
  throw ConfigError("inadmissible parameters: alpha + beta = 2");
}

inline std::string equation_name(const ScenarioConfig& cfg) {
  return equation_name(cfg.alpha, cfg.beta, cfg.gamma);
}

// Full validation; throws ConfigError with a descriptive message.
inline void validate_config(const ScenarioConfig& cfg) {
  cfg.params().validate();
  if (cfg.grid_n < 4 || (cfg.grid_n & (cfg.grid_n - 1)) != 0)
    throw ConfigError("grid must be a power of two >= 4, got " +
                      std::to_string(cfg.grid_n));
  if (!(cfg.dt > 0)) throw ConfigError("dt must be positive");
  if (cfg.t_max < 0) throw ConfigError("t_max must be >= 0");
  if (cfg.out_dir.empty()) throw ConfigError("out_dir must not be empty");
  for (const IcTerm& t : cfg.ic) {
    if (t.field != "u" && t.field != "rho")
      throw ConfigError("ic term field must be \"u\" or \"rho\", got \"" +
                        t.field + "\"");
    if (t.field == "rho" && cfg.gamma == 0)
      throw ConfigError("ic term for rho requires gamma = 1");
    if (t.component < 0 || t.component >= cfg.dim)
      throw ConfigError("ic term component out of range [0, dim)");
    if (static_cast<int>(t.k.size()) != cfg.dim)
      throw ConfigError("ic term wavevector must have one entry per dimension");
    for (int kj : t.k)
      if (3 * std::abs(kj) > cfg.grid_n)
        throw ConfigError("ic term exceeds the grid bandwidth: |k| <= N/3 "
                          "required, got k = " + std::to_string(kj) +
                          " with N = " + std::to_string(cfg.grid_n));
    if (t.kind != "cos" && t.kind != "sin")
      throw ConfigError("ic term kind must be \"cos\" or \"sin\"");
  }
  if (cfg.mode == RunMode::curvature) {
    if (cfg.k_range.empty()) throw ConfigError("curvature mode needs k_range");
    for (int j : cfg.k_range)
      if (j < 1) throw ConfigError("k_range entries must be >= 1");
  }
  if (cfg.mode == RunMode::verify_b) {
    if (cfg.b_list.empty()) throw ConfigError("verify-b mode needs b_list");
    for (double b : cfg.b_list)
      if (!(b > 0)) throw ConfigError("b_list entries must be positive");
    if (cfg.n_vec[0] == 0 && cfg.n_vec[1] == 0)
      throw ConfigError("n_vec must be a nonzero lattice point");
  }
}

namespace detail {

template <class T>
T json_get(const nlohmann::json& j, const std::string& key, const T& fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config key \"" + key + "\": " + e.what());
  }
}

inline IcTerm parse_ic_term(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("ic entries must be objects");
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (key != "field" && key != "component" && key != "k" &&
        key != "amplitude" && key != "phase" && key != "kind")
      throw ConfigError("unknown ic term key: " + key);
  }
  IcTerm t;
  t.field = json_get<std::string>(j, "field", "u");
  t.component = json_get<int>(j, "component", 0);
  t.k = json_get<std::vector<int>>(j, "k", {});
  t.amplitude = json_get<double>(j, "amplitude", 0.0);
  t.phase = json_get<double>(j, "phase", 0.0);
  t.kind = json_get<std::string>(j, "kind", "cos");
  return t;
}

}  // namespace detail

// Parse a configuration document.  Unknown keys are rejected so typos do not
// silently fall back to defaults.  Does not run validate_config; callers do
// that after applying command-line overrides.
inline ScenarioConfig parse_config_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config root must be a JSON object");
  static const char* known[] = {"mode", "alpha",  "beta",   "gamma", "n",
                                "grid", "dt",     "t_max",  "ic",    "out_dir",
                                "dealias", "k_range", "b_list", "n_vec", "seed"};
  for (const auto& [key, value] : j.items()) {
    (void)value;
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw ConfigError("unknown config key: " + key);
  }
  ScenarioConfig cfg;
  if (j.contains("mode"))
    cfg.mode = mode_from_string(detail::json_get<std::string>(j, "mode", "simulate"));
  cfg.alpha = detail::json_get<int>(j, "alpha", cfg.alpha);
  cfg.beta = detail::json_get<int>(j, "beta", cfg.beta);
  cfg.gamma = detail::json_get<int>(j, "gamma", cfg.gamma);
  cfg.dim = detail::json_get<int>(j, "n", cfg.dim);
  cfg.grid_n = detail::json_get<int>(j, "grid", cfg.grid_n);
  cfg.dt = detail::json_get<double>(j, "dt", cfg.dt);
  cfg.t_max = detail::json_get<double>(j, "t_max", cfg.t_max);
  cfg.out_dir = detail::json_get<std::string>(j, "out_dir", cfg.out_dir);
  cfg.dealias = detail::json_get<bool>(j, "dealias", cfg.dealias);
  cfg.k_range = detail::json_get<std::vector<int>>(j, "k_range", cfg.k_range);
  cfg.b_list = detail::json_get<std::vector<double>>(j, "b_list", cfg.b_list);
  if (j.contains("n_vec")) {
    auto v = detail::json_get<std::vector<int>>(j, "n_vec", {});
    if (v.size() != 2) throw ConfigError("n_vec must have exactly 2 entries");
    cfg.n_vec = {v[0], v[1]};
  }
  cfg.seed = detail::json_get<std::uint64_t>(j, "seed", cfg.seed);
  if (j.contains("ic")) {
    const auto& arr = j.at("ic");
    if (!arr.is_array()) throw ConfigError("ic must be an array of terms");
    for (const auto& e : arr) cfg.ic.push_back(detail::parse_ic_term(e));
  }
  return cfg;
}

inline ScenarioConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file " + path + ": " + e.what());
  }
  return parse_config_json(j);
}

// Echo of the configuration for the summary document.
inline nlohmann::json config_to_json(const ScenarioConfig& cfg) {
  nlohmann::json j;
  j["mode"] = to_string(cfg.mode);
  j["alpha"] = cfg.alpha;
  j["beta"] = cfg.beta;
  j["gamma"] = cfg.gamma;
  j["n"] = cfg.dim;
  j["grid"] = cfg.grid_n;
  j["dt"] = cfg.dt;
  j["t_max"] = cfg.t_max;
  j["out_dir"] = cfg.out_dir;
  j["dealias"] = cfg.dealias;
  j["k_range"] = cfg.k_range;
  j["b_list"] = cfg.b_list;
  j["n_vec"] = std::vector<int>{cfg.n_vec[0], cfg.n_vec[1]};
  j["seed"] = cfg.seed;
  j["ic"] = nlohmann::json::array();
  for (const IcTerm& t : cfg.ic) {
    nlohmann::json e;
    e["field"] = t.field;
    e["component"] = t.component;
    e["k"] = t.k;
    e["amplitude"] = t.amplitude;
    e["phase"] = t.phase;
    e["kind"] = t.kind;
    j["ic"].push_back(e);
  }
  return j;
}

// Synthesize the initial state on the configured grid.
template <class Real>
EulerState<Real> build_initial_state(const ScenarioConfig& cfg) {
  const Grid g(cfg.dim, cfg.grid_n);
  EulerState<Real> s;
  s.u = TorusField<Real>(g, cfg.dim);
  if (cfg.gamma == 1) s.rho = TorusField<Real>(g, cfg.dim);
  const Real twopi = Real(2) * std::numbers::pi_v<Real>;
  for (const IcTerm& t : cfg.ic) {
    TorusField<Real>& dst = (t.field == "rho") ? *s.rho : s.u;
    const bool use_sin = (t.kind == "sin");
    for (std::size_t p = 0; p < g.size(); ++p) {
      Real theta = static_cast<Real>(t.phase);
      for (int a = 0; a < cfg.dim; ++a)
        theta += twopi * static_cast<Real>(t.k[static_cast<std::size_t>(a)]) *
                 g.point<Real>(p, a);
      const Real val = static_cast<Real>(t.amplitude) *
                       (use_sin ? std::sin(theta) : std::cos(theta));
      dst.at(t.component, p) += val;
    }
  }
  return s;
}

}  // namespace chtorus
