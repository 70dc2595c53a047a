#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "mhd1d/diagnostics.hpp"
#include "mhd1d/integrator.hpp"
#include "mhd1d/scenarios.hpp"

using namespace mhd1d;

namespace {

// Independent brute-force quadrature of the dissipation integrand, written
// directly from its definition with its own gradient bookkeeping. Kept free
// of the library's operator helpers on purpose.
double dissipation_reference(const Grid& g, const State& s,
                             const Parameters& p) {
  const int n = g.n_cells;
  const double dx = g.dx;
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = s.v[i];
    const double th = s.theta[i];
    const double kap = p.kappa0 * std::pow(th, p.beta);
    const double mu = p.mu1 + p.mu2 * std::pow(v, -p.alpha);

    const double ux = (s.u[i + 1] - s.u[i]) / dx;
    const double w1x = (s.w1[i + 1] - s.w1[i]) / dx;
    const double w2x = (s.w2[i + 1] - s.w2[i]) / dx;

    auto grad_left = [&](const std::vector<double>& f, bool odd) {
      if (i == 0) return odd ? 2.0 * f[0] / dx : 0.0;
      return (f[i] - f[i - 1]) / dx;
    };
    auto grad_right = [&](const std::vector<double>& f, bool odd) {
      if (i == n - 1) return odd ? -2.0 * f[n - 1] / dx : 0.0;
      return (f[i + 1] - f[i]) / dx;
    };
    const double txl = grad_left(s.theta, false), txr = grad_right(s.theta, false);
    const double b1l = grad_left(s.b1, true), b1r = grad_right(s.b1, true);
    const double b2l = grad_left(s.b2, true), b2r = grad_right(s.b2, true);

    const double tx2 = 0.5 * (txl * txl + txr * txr);
    const double bx2 = 0.5 * (b1l * b1l + b2l * b2l + b1r * b1r + b2r * b2r);

    total += dx * (kap * tx2 / (v * th * th) + mu * ux * ux / (v * th) +
                   p.lambda_w * (w1x * w1x + w2x * w2x) / (v * th) +
                   p.nu_b * bx2 / (v * th));
  }
  return total;
}

State perturbed_state(const Grid& g) {
  State s(g);
  for (int i = 0; i < g.n_cells; ++i) {
    const double x = g.x_center(i);
    s.v[i] = 1.0 + 0.35 * std::sin(2.0 * M_PI * x);
    s.theta[i] = 1.2 + 0.3 * std::cos(M_PI * x);
    s.b1[i] = 0.4 * std::sin(M_PI * x);
    s.b2[i] = 0.2 * std::sin(2.0 * M_PI * x);
  }
  for (int j = 0; j <= g.n_cells; ++j) {
    const double x = g.x_node(j);
    s.u[j] = 0.3 * std::sin(M_PI * x);
    s.w1[j] = 0.25 * std::sin(2.0 * M_PI * x);
    s.w2[j] = 0.15 * std::sin(M_PI * x);
  }
  apply_boundary(g, s);
  return s;
}

} // namespace

TEST_CASE("rest-state diagnostics take their closed-form values") {
  const Grid g(32);
  const Parameters p = Parameters::paper_normalized(0.0, 1.0);
  const State s(g);
  const Accumulators acc = Accumulators::init(g, s, p);
  const DiagnosticsSample d = sample(g, s, acc, p);
  CHECK(d.mass == Catch::Approx(1.0).margin(1e-15));
  CHECK(d.total_energy == Catch::Approx(1.0).margin(1e-15));
  CHECK(d.e_paper == Catch::Approx(2.0).margin(1e-15));
  CHECK(d.e_balance == Catch::Approx(0.0).margin(1e-15));
  CHECK(d.V == 0.0);
  CHECK(d.l1_v_neg_alpha == Catch::Approx(1.0).margin(1e-15));
  CHECK(d.min_v == 1.0);
  CHECK(d.max_v == 1.0);
  CHECK(d.min_theta == 1.0);
  CHECK(d.max_theta == 1.0);
  CHECK(d.h1_v == 0.0);
  CHECK(d.h1_u == 0.0);
}

TEST_CASE("uniform b shifts the energies by its magnetic content") {
  const Grid g(32);
  const Parameters p = Parameters::paper_normalized(0.0, 1.0);
  State s(g);
  for (auto& b : s.b1) b = 1.0; // b = (1, 0), v = theta = 1
  const Accumulators acc = Accumulators::init(g, s, p);
  const DiagnosticsSample d = sample(g, s, acc, p);
  CHECK(d.total_energy == Catch::Approx(1.5).margin(1e-14));
  CHECK(d.e_paper == Catch::Approx(3.0).margin(1e-14));
}

TEST_CASE("dissipation rate matches an independent quadrature") {
  const Grid g(32);
  const State s = perturbed_state(g);
  for (double alpha : {0.0, 1.0, 2.0}) {
    for (double beta : {0.5, 1.0, 2.0}) {
      const Parameters p = Parameters::paper_normalized(alpha, beta);
      const double got = dissipation_rate(g, s, p);
      const double want = dissipation_reference(g, s, p);
      CHECK(got == Catch::Approx(want).epsilon(1e-12));
      CHECK(got >= 0.0);
    }
  }
}

TEST_CASE("effective stress closed forms") {
  const Grid g(16);
  const Parameters p = Parameters::paper_normalized(0.0, 1.0);

  State s(g);
  auto sigma = effective_stress(g, s, p);
  for (double x : sigma) CHECK(x == Catch::Approx(-1.0).margin(1e-15));

  for (auto& b : s.b1) b = 1.0;
  sigma = effective_stress(g, s, p);
  for (double x : sigma) CHECK(x == Catch::Approx(-1.5).margin(1e-15));

  State lin(g);
  const double c = 0.7;
  for (int j = 0; j <= g.n_cells; ++j) lin.u[j] = c * (g.x_node(j) - 0.5);
  sigma = effective_stress(g, lin, p);
  for (double x : sigma) CHECK(x == Catch::Approx(c - 1.0).margin(1e-13));

  lin.v[4] = -0.5;
  CHECK_THROWS_AS(effective_stress(g, lin, p), DomainError);
}

TEST_CASE("representation formula is exact on rest states for all alpha") {
  const Grid g(64);
  for (double alpha : {0.0, 0.5, 1.0, 2.0}) {
    const Parameters p = Parameters::paper_normalized(alpha, 1.0);
    const State s0(g);
    StepControls c;
    c.dt_min = c.dt_max = 1e-3;
    c.t_final = 1.0;
    const AdvanceResult res = advance(g, s0, c, p);
    const auto rep = representation_report(g, res.state, res.accum, s0, p);
    CHECK(rep.max_rel_err <= 1e-10);
    CHECK(rep.y == Catch::Approx(std::exp(f_alpha(1.0, alpha) - 1.0))
                       .epsilon(1e-10));
    for (double b0 : rep.b0)
      CHECK(b0 == Catch::Approx(std::exp(-1.0 - f_alpha(1.0, alpha)))
                      .epsilon(1e-14));
  }
}

TEST_CASE("alpha = 2 rest state has B0 = e") {
  const Grid g(16);
  const Parameters p = Parameters::paper_normalized(2.0, 1.0);
  const State s(g);
  const auto b0 = representation_b0(g, s, p);
  for (double x : b0) CHECK(x == Catch::Approx(std::exp(1.0)).epsilon(1e-14));
}

TEST_CASE("representation identity holds at t = 0 for arbitrary data") {
  const Grid g(48);
  const Parameters p = Parameters::paper_normalized(1.5, 1.0);
  const State s = perturbed_state(g);
  const Accumulators acc = Accumulators::init(g, s, p);
  const auto rep = representation_report(g, s, acc, s, p);
  CHECK(rep.max_rel_err <= 1e-12);
}

TEST_CASE("representation error shrinks under refinement on evolved runs") {
  const Parameters p = Parameters::paper_normalized(1.0, 1.0);
  const auto scens = builtin_scenarios();
  const Scenario* lo = find_scenario(scens, "large-oscillation");
  REQUIRE(lo != nullptr);

  std::vector<double> errs;
  for (int n : {32, 64, 128}) {
    const Grid g(n);
    const State s0 = sample_scenario(g, *lo);
    StepControls c;
    c.dt_min = c.dt_max = 0.05 * g.dx;
    c.t_final = 0.25;
    double worst = 0.0;
    std::vector<StepObserver> obs;
    obs.push_back([&](const StepEvent& ev) {
      const auto rep = representation_report(g, ev.state, ev.accum, s0, p);
      worst = std::max(worst, rep.max_rel_err);
    });
    advance(g, s0, c, p, obs);
    errs.push_back(worst);
  }
  CHECK(errs[1] < errs[0]);
  CHECK(errs[2] < errs[1]);
}

TEST_CASE("bounds monitor") {
  DiagnosticsSample a;
  a.min_v = a.max_v = a.min_theta = a.max_theta = 1.0;
  a.l1_v_neg_alpha = 1.0;
  a.e_paper = 2.0;
  a.vint = 0.0;

  SECTION("rest series: floors equal ceilings, flag true") {
    const std::vector<DiagnosticsSample> series(5, a);
    const BoundsReport r = bounds_monitor(series);
    CHECK(r.inf_min_v == 1.0);
    CHECK(r.sup_max_v == 1.0);
    CHECK(r.inf_min_theta == 1.0);
    CHECK(r.sup_max_theta == 1.0);
    CHECK(r.sup_e_paper_plus_vint == 2.0);
    CHECK(r.bounded);
  }
  SECTION("a nonpositive floor flips the flag") {
    std::vector<DiagnosticsSample> series(5, a);
    series[3].min_v = -0.25;
    CHECK_FALSE(bounds_monitor(series).bounded);
  }
  SECTION("empty series is rejected") {
    CHECK_THROWS_AS(bounds_monitor({}), DomainError);
  }
}

TEST_CASE("sample rejects invalid states") {
  const Grid g(8);
  const Parameters p = Parameters::paper_normalized(0.0, 1.0);
  State s(g);
  const Accumulators acc = Accumulators::init(g, s, p);
  s.theta[2] = -1.0;
  CHECK_THROWS_AS(sample(g, s, acc, p), DomainError);
}

TEST_CASE("V >= 0 and vint nondecreasing along an evolved trajectory") {
  const Grid g(64);
  const Parameters p = Parameters::paper_normalized(1.0, 1.0);
  const auto scens = builtin_scenarios();
  const State s0 = sample_scenario(g, *find_scenario(scens, "large-oscillation"));
  StepControls c;
  c.t_final = 0.3;
  double last_vint = 0.0;
  std::vector<StepObserver> obs;
  obs.push_back([&](const StepEvent& ev) {
    const auto d = sample(g, ev.state, ev.accum, p);
    CHECK(d.V >= 0.0);
    CHECK(d.vint >= last_vint);
    last_vint = d.vint;
  });
  advance(g, s0, c, p, obs);
}

TEST_CASE("entropy balance residual shrinks under joint refinement") {
  const Parameters p = Parameters::paper_normalized(1.0, 1.0);
  const auto scens = builtin_scenarios();
  const Scenario* lo = find_scenario(scens, "large-oscillation");

  std::vector<double> res_max;
  for (int n : {32, 64, 128}) {
    const Grid g(n);
    const State s0 = sample_scenario(g, *lo);
    StepControls c;
    c.dt_min = c.dt_max = 0.05 * g.dx;
    c.t_final = 0.25;
    const double e0 = entropy_functional_balance(g, s0);
    double worst = 0.0;
    std::vector<StepObserver> obs;
    obs.push_back([&](const StepEvent& ev) {
      const double res =
          entropy_functional_balance(g, ev.state) - e0 + ev.accum.vint;
      worst = std::max(worst, std::abs(res));
    });
    advance(g, s0, c, p, obs);
    res_max.push_back(worst);
  }
  CHECK(res_max[1] <= 0.6 * res_max[0]);
  CHECK(res_max[2] <= 0.6 * res_max[1]);
}
