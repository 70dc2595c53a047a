#pragma once

//=============================================================================
// Run configuration: JSON file -> validated RunConfig. Unknown keys are
// rejected, defaults are materialized, and every validation error names the
// offending field. A top-level JSON array is a sweep of independent runs.
//=============================================================================

#include <cstdint>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "mhd1d/errors.hpp"
#include "mhd1d/integrator.hpp"
#include "mhd1d/io.hpp"
#include "mhd1d/physics.hpp"
#include "mhd1d/scenarios.hpp"

namespace mhd1d {

inline constexpr const char* kVersion = "0.1.0";

struct RunConfig {
  std::string scenario;      // preset name; empty when initial_state is used
  std::string initial_state; // path to a sampled-profile CSV
  int n_cells = 0;
  double t_final = 0.0;
  double alpha = 0.0;
  double beta = 1.0;
  Parameters params; // resolved (normalized constants + explicit overrides)
  StepControls controls;
  long series_every = 1;
  long snapshot_every = 100;
  std::string out = "out";
  std::uint64_t seed = 0;
  std::vector<std::string> warnings;

  void validate() const {
    if (scenario.empty() == initial_state.empty())
      throw ConfigError(
          "config: exactly one of 'scenario' and 'initial_state' is required");
    if (!scenario.empty()) {
      const auto list = builtin_scenarios(seed);
      if (!find_scenario(list, scenario))
        throw ConfigError("config: unknown scenario '" + scenario + "'");
    }
    if (n_cells < 4) throw ConfigError("config: n_cells must be >= 4");
    if (!(t_final > 0.0)) throw ConfigError("config: t_final must be > 0");
    if (series_every < 1)
      throw ConfigError("config: series_every must be >= 1");
    if (snapshot_every < 1)
      throw ConfigError("config: snapshot_every must be >= 1");
    try {
      params.validate();
      controls.validate();
    } catch (const DomainError& e) {
      throw ConfigError(std::string("config: ") + e.what());
    }
  }
};

namespace detail {

inline void reject_unknown_keys(const nlohmann::json& j,
                                const std::set<std::string>& allowed,
                                const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key()))
      throw ConfigError("config: unknown key '" + where + it.key() + "'");
}

template <typename T>
T get_or(const nlohmann::json& j, const std::string& key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError("config: field '" + key + "' has the wrong type");
  }
}

} // namespace detail

inline RunConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object");
  detail::reject_unknown_keys(
      j,
      {"scenario", "initial_state", "n_cells", "t_final", "alpha", "beta",
       "params", "cfl", "dt", "dt_min", "dt_max", "max_retries",
       "series_every", "snapshot_every", "out", "seed"},
      "");

  RunConfig c;
  c.scenario = detail::get_or<std::string>(j, "scenario", "");
  c.initial_state = detail::get_or<std::string>(j, "initial_state", "");
  c.n_cells = detail::get_or<int>(j, "n_cells", 0);
  c.t_final = detail::get_or<double>(j, "t_final", 0.0);
  c.alpha = detail::get_or<double>(j, "alpha", 0.0);
  c.beta = detail::get_or<double>(j, "beta", 1.0);

  c.params = Parameters::paper_normalized(c.alpha, c.beta);
  if (j.contains("params")) {
    const auto& pj = j.at("params");
    if (!pj.is_object())
      throw ConfigError("config: 'params' must be an object");
    detail::reject_unknown_keys(
        pj, {"R", "c_v", "lambda", "nu", "mu1", "mu2", "kappa0", "e_const"},
        "params.");
    c.params.R = detail::get_or<double>(pj, "R", c.params.R);
    c.params.c_v = detail::get_or<double>(pj, "c_v", c.params.c_v);
    c.params.lambda_w = detail::get_or<double>(pj, "lambda", c.params.lambda_w);
    c.params.nu_b = detail::get_or<double>(pj, "nu", c.params.nu_b);
    c.params.mu1 = detail::get_or<double>(pj, "mu1", c.params.mu1);
    c.params.mu2 = detail::get_or<double>(pj, "mu2", c.params.mu2);
    c.params.kappa0 = detail::get_or<double>(pj, "kappa0", c.params.kappa0);
    c.params.e_const = detail::get_or<double>(pj, "e_const", c.params.e_const);
  }

  c.controls.cfl = detail::get_or<double>(j, "cfl", 0.4);
  c.controls.dt_min = detail::get_or<double>(j, "dt_min", 1e-10);
  c.controls.dt_max = detail::get_or<double>(j, "dt_max", 0.1);
  c.controls.max_retries = detail::get_or<int>(j, "max_retries", 8);
  if (j.contains("dt")) {
    const double dt = detail::get_or<double>(j, "dt", 0.0);
    if (!(dt > 0.0)) throw ConfigError("config: dt must be > 0");
    c.controls.dt_min = c.controls.dt_max = dt; // fixed-step mode
  }
  c.controls.t_final = c.t_final;

  c.series_every = detail::get_or<long>(j, "series_every", 1);
  c.snapshot_every = detail::get_or<long>(j, "snapshot_every", 100);
  c.out = detail::get_or<std::string>(j, "out", "out");
  c.seed = detail::get_or<std::uint64_t>(j, "seed", 0);

  if (c.beta == 0.0)
    c.warnings.push_back(
        "beta = 0: constant heat conductivity, outside the degenerate "
        "(beta > 0) regime the global theory covers");

  c.validate();

  // Reject bad sampled initial data at configuration time.
  if (!c.initial_state.empty()) read_state_table(c.initial_state);

  return c;
}

// A file holding one config object, or an array of them (a sweep).
inline std::vector<RunConfig> load_configs(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config parse error in '" + path + "': " + e.what());
  }
  std::vector<RunConfig> out;
  if (j.is_array()) {
    if (j.empty()) throw ConfigError("config: sweep array is empty");
    std::set<std::string> outs;
    for (const auto& item : j) {
      RunConfig c = config_from_json(item);
      if (!outs.insert(c.out).second)
        throw ConfigError("config: sweep entries must have distinct 'out' "
                          "directories ('" +
                          c.out + "' repeats)");
      out.push_back(std::move(c));
    }
  } else {
    out.push_back(config_from_json(j));
  }
  return out;
}

inline RunConfig load_config(const std::string& path) {
  auto v = load_configs(path);
  if (v.size() != 1)
    throw ConfigError("config: expected a single run config, got a sweep");
  return v.front();
}

inline nlohmann::json config_to_json(const RunConfig& c) {
  nlohmann::json j;
  if (!c.scenario.empty()) j["scenario"] = c.scenario;
  if (!c.initial_state.empty()) j["initial_state"] = c.initial_state;
  j["n_cells"] = c.n_cells;
  j["t_final"] = c.t_final;
  j["alpha"] = c.alpha;
  j["beta"] = c.beta;
  j["params"] = {{"R", c.params.R},         {"c_v", c.params.c_v},
                 {"lambda", c.params.lambda_w}, {"nu", c.params.nu_b},
                 {"mu1", c.params.mu1},     {"mu2", c.params.mu2},
                 {"kappa0", c.params.kappa0}, {"e_const", c.params.e_const}};
  j["cfl"] = c.controls.cfl;
  j["dt_min"] = c.controls.dt_min;
  j["dt_max"] = c.controls.dt_max;
  j["max_retries"] = c.controls.max_retries;
  j["series_every"] = c.series_every;
  j["snapshot_every"] = c.snapshot_every;
  j["out"] = c.out;
  j["seed"] = c.seed;
  return j;
}

} // namespace mhd1d
