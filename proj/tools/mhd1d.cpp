// Command-line driver: simulate / verify / audit / scenarios.
// Exit codes: 0 success, 2 config error, 3 solver failure, 4 verification
// failure.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mhd1d/mhd1d.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitVerification = 4;

int cmd_simulate(const std::string& config_path, const std::string& out_override,
                 int jobs) {
  std::vector<mhd1d::RunConfig> configs = mhd1d::load_configs(config_path);
  if (!out_override.empty()) {
    if (configs.size() != 1) {
      std::cerr << "--out applies only to single-run configs\n";
      return kExitConfig;
    }
    configs[0].out = out_override;
  }
  for (const auto& c : configs)
    for (const auto& w : c.warnings) std::cerr << "warning: " << w << "\n";

  const auto results = mhd1d::run_sweep(configs, jobs);
  int exit_code = kExitOk;
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    if (r.exit_code == 0) {
      std::cout << configs[i].out << ": ok, " << r.steps << " steps, "
                << r.retries << " retries\n";
    } else {
      std::cerr << configs[i].out << ": failed: " << r.error_message << "\n";
      exit_code = std::max(exit_code, r.exit_code);
    }
  }
  return exit_code;
}

int cmd_verify_mms(int levels, int base_n, double t_final) {
  using namespace mhd1d;
  const Parameters p = Parameters::paper_normalized(1.0, 1.0);
  const ManufacturedCase mc = default_manufactured_case();

  std::vector<int> ns;
  for (int l = 0, n = base_n; l < levels; ++l, n *= 2) ns.push_back(n);

  const auto spatial =
      run_mms(mc, ns, t_final, 0.2, MmsTimeScaling::dx_squared, p);
  const auto combined = run_mms(mc, ns, t_final, 0.05, MmsTimeScaling::dx, p);

  auto print_report = [](const ConvergenceReport& r, const char* label) {
    std::printf("%s study (%s):\n", label, r.case_name.c_str());
    std::printf("  %-8s", "N");
    for (const char* f : kFieldNames) std::printf(" %12s", f);
    std::printf("\n");
    for (std::size_t l = 0; l < r.levels.size(); ++l) {
      std::printf("  %-8d", r.levels[l]);
      for (int f = 0; f < 7; ++f) std::printf(" %12.4e", r.errors[l][f]);
      std::printf("\n");
    }
    std::printf("  %-8s", "order");
    for (int f = 0; f < 7; ++f) std::printf(" %12.3f", r.orders[f]);
    std::printf("\n");
  };
  print_report(spatial, "spatial (dt ~ dx^2)");
  print_report(combined, "combined (dt ~ dx)");

  const bool ok = spatial.min_order() >= 1.9 && combined.min_order() >= 0.9;
  std::printf("observed orders: spatial >= %.3f, combined >= %.3f -> %s\n",
              spatial.min_order(), combined.min_order(),
              ok ? "pass" : "FAIL");
  return ok ? kExitOk : kExitVerification;
}

int cmd_verify_oracle() {
  using namespace mhd1d;
  const Parameters p = Parameters::paper_normalized(1.0, 1.0);
  const Grid g(16);
  const auto scenarios = builtin_scenarios();
  const State s0 = sample_scenario(g, *find_scenario(scenarios,
                                                     "large-oscillation"));
  const std::vector<double> dts = {1e-4, 5e-5, 2.5e-5};
  const auto disc = oracle_equivalence(g, s0, p, dts, 0.01);

  std::printf("semi-implicit vs explicit oracle, N=16, T=0.01:\n");
  for (std::size_t i = 0; i < dts.size(); ++i)
    std::printf("  dt = %.2e  max discrepancy = %.6e\n", dts[i], disc[i]);
  bool ok = true;
  for (std::size_t i = 1; i < disc.size(); ++i) {
    const double ratio = disc[i - 1] / disc[i];
    std::printf("  ratio level %zu/%zu = %.3f\n", i - 1, i, ratio);
    ok = ok && ratio >= 1.5 && ratio <= 2.5;
  }
  std::printf("first-order agreement -> %s\n", ok ? "pass" : "FAIL");
  return ok ? kExitOk : kExitVerification;
}

int cmd_audit(const std::string& series_path) {
  const auto series = mhd1d::read_series(series_path);
  const auto rep = mhd1d::bounds_monitor(series);
  std::printf("samples:              %zu\n", series.size());
  std::printf("inf_t min v:          %.12g\n", rep.inf_min_v);
  std::printf("sup_t max v:          %.12g\n", rep.sup_max_v);
  std::printf("inf_t min theta:      %.12g\n", rep.inf_min_theta);
  std::printf("sup_t max theta:      %.12g\n", rep.sup_max_theta);
  std::printf("sup_t int v^-alpha:   %.12g\n", rep.sup_l1_v_neg_alpha);
  std::printf("sup_t e_paper + vint: %.12g\n", rep.sup_e_paper_plus_vint);
  std::printf("bounded:              %s\n", rep.bounded ? "true" : "false");
  return rep.bounded ? kExitOk : kExitVerification;
}

int cmd_scenarios_list() {
  for (const auto& s : mhd1d::builtin_scenarios())
    std::printf("%-20s %s\n", s.name.c_str(), s.description.c_str());
  return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"1-D planar compressible MHD in Lagrangian mass coordinates"};
  app.require_subcommand(1);

  std::string config_path, out_override, series_path;
  int jobs = 1;
  int levels = 3;
  int base_n = 32;
  double mms_t_final = 0.1;

  auto* sim = app.add_subcommand("simulate", "run a configured simulation");
  sim->add_option("--config", config_path, "config JSON (object or sweep array)")
      ->required();
  sim->add_option("--out", out_override, "output directory override");
  sim->add_option("--jobs", jobs, "concurrent runs for sweep configs");

  auto* verify = app.add_subcommand("verify", "verification studies");
  verify->require_subcommand(1);
  auto* mms = verify->add_subcommand("mms", "manufactured-solution convergence");
  mms->add_option("--levels", levels, "number of refinement levels (>= 3)");
  mms->add_option("--base-n", base_n, "coarsest grid size");
  mms->add_option("--t-final", mms_t_final, "study horizon");
  auto* orc = verify->add_subcommand("oracle",
                                     "semi-implicit vs explicit reference");

  auto* audit = app.add_subcommand("audit", "recompute bounds from a series");
  audit->add_option("--series", series_path, "path to series.csv")->required();

  auto* scen = app.add_subcommand("scenarios", "scenario utilities");
  scen->require_subcommand(1);
  auto* scen_list = scen->add_subcommand("list", "list built-in scenarios");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(config_path, out_override, jobs);
    if (mms->parsed()) {
      if (levels < 3) {
        std::cerr << "verify mms: --levels must be >= 3\n";
        return kExitConfig;
      }
      return cmd_verify_mms(levels, base_n, mms_t_final);
    }
    if (orc->parsed()) return cmd_verify_oracle();
    if (audit->parsed()) return cmd_audit(series_path);
    if (scen_list->parsed()) return cmd_scenarios_list();
  } catch (const mhd1d::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const mhd1d::DomainError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitOk;
}
