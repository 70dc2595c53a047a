#pragma once

//=============================================================================
// Run orchestration: a validated RunConfig in, artifacts on disk out.
//
//   <out>/series.csv          one diagnostics row per cadence step
//   <out>/representation.csv  t, Y, max_rel_err per cadence step
//   <out>/snapshots/          full-state dumps t=<time>.csv (+ .nodes.csv)
//   <out>/meta.json           resolved config, version, status, counters
//
// Reruns with identical config and seed are byte-identical for the data
// files; meta.json additionally records wall-clock time.
//=============================================================================

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "mhd1d/config.hpp"
#include "mhd1d/diagnostics.hpp"
#include "mhd1d/integrator.hpp"
#include "mhd1d/io.hpp"
#include "mhd1d/scenarios.hpp"

namespace mhd1d {

struct RunResult {
  int exit_code = 0; // 0 ok, 3 solver failure
  long steps = 0;
  long retries = 0;
  std::string error_type;
  std::string error_message;
};

inline State initial_state_for(const Grid& g, const RunConfig& c) {
  if (!c.scenario.empty()) {
    const auto list = builtin_scenarios(c.seed);
    const Scenario* sc = find_scenario(list, c.scenario);
    if (!sc) throw ConfigError("config: unknown scenario '" + c.scenario + "'");
    return sample_scenario(g, *sc);
  }
  return resample_state(g, read_state_table(c.initial_state));
}

namespace detail {
inline std::string snapshot_name(double t) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "t=%.6f", t);
  return buf;
}
} // namespace detail

inline RunResult run(const RunConfig& config) {
  namespace fs = std::filesystem;
  const auto wall_start = std::chrono::steady_clock::now();

  config.validate();
  const Grid grid(config.n_cells);
  const Parameters& params = config.params;
  const State state0 = initial_state_for(grid, config);

  fs::create_directories(fs::path(config.out) / "snapshots");
  std::ofstream series(fs::path(config.out) / "series.csv");
  std::ofstream repr(fs::path(config.out) / "representation.csv");
  if (!series || !repr)
    throw ConfigError("cannot write into output directory '" + config.out +
                      "'");
  series << series_header() << '\n';
  repr << representation_header() << '\n';

  auto write_series_row = [&](const State& s, const Accumulators& acc) {
    series << series_row(sample(grid, s, acc, params)) << '\n';
    const auto rr = representation_report(grid, s, acc, state0, params);
    repr << representation_row(rr.t, rr.y, rr.max_rel_err) << '\n';
  };
  auto write_snapshot_files = [&](const State& s) {
    const fs::path dir = fs::path(config.out) / "snapshots";
    const std::string stem = detail::snapshot_name(s.t);
    write_snapshot((dir / (stem + ".csv")).string(),
                   (dir / (stem + ".nodes.csv")).string(), grid, s);
  };

  RunResult result;
  nlohmann::json meta;
  meta["version"] = kVersion;
  meta["config"] = config_to_json(config);
  meta["warnings"] = config.warnings;

  {
    const Accumulators acc0 = Accumulators::init(grid, state0, params);
    write_series_row(state0, acc0);
    write_snapshot_files(state0);
  }

  long last_series_step = 0;
  long last_snapshot_step = 0;
  std::vector<StepObserver> observers;
  observers.push_back([&](const StepEvent& ev) {
    if (ev.step % config.series_every == 0) {
      write_series_row(ev.state, ev.accum);
      last_series_step = ev.step;
    }
    if (ev.step % config.snapshot_every == 0) {
      write_snapshot_files(ev.state);
      last_snapshot_step = ev.step;
    }
  });

  try {
    AdvanceResult adv =
        advance(grid, state0, config.controls, params, observers);
    if (adv.steps != last_series_step) write_series_row(adv.state, adv.accum);
    if (adv.steps != last_snapshot_step) write_snapshot_files(adv.state);
    result.steps = adv.steps;
    result.retries = adv.total_retries;
    meta["status"] = "ok";
  } catch (const std::exception& e) {
    result.exit_code = 3;
    result.error_type = typeid(e).name();
    result.error_message = e.what();
    meta["status"] = "error";
    meta["error"] = {{"message", e.what()}};
    if (dynamic_cast<const DtUnderflow*>(&e))
      meta["error"]["type"] = "DtUnderflow";
    else if (dynamic_cast<const SingularSystem*>(&e))
      meta["error"]["type"] = "SingularSystem";
    else if (dynamic_cast<const PositivityFailure*>(&e))
      meta["error"]["type"] = "PositivityFailure";
    else
      meta["error"]["type"] = "unknown";
  }

  const auto wall_end = std::chrono::steady_clock::now();
  meta["steps"] = result.steps;
  meta["retries"] = result.retries;
  meta["wall_clock_seconds"] =
      std::chrono::duration<double>(wall_end - wall_start).count();
  std::ofstream metaf(fs::path(config.out) / "meta.json");
  metaf << meta.dump(2) << '\n';

  return result;
}

// Independent runs of a sweep, each writing to its own directory. Worker
// threads pull configs from a shared index; results land in input order.
inline std::vector<RunResult> run_sweep(const std::vector<RunConfig>& configs,
                                        int jobs) {
  std::vector<RunResult> results(configs.size());
  if (jobs < 1) jobs = 1;
  jobs = std::min<int>(jobs, static_cast<int>(configs.size()));

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= configs.size()) return;
      try {
        results[i] = run(configs[i]);
      } catch (const std::exception& e) {
        results[i].exit_code = 3;
        results[i].error_message = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int k = 0; k < jobs; ++k) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  return results;
}

} // namespace mhd1d
