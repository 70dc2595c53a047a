#pragma once

//=============================================================================
// Independent correctness oracles.
//
// oracle_step: a fully explicit forward-Euler stepper built on the same
// staggered difference operators as the semi-implicit scheme. Used on tiny
// grids and short horizons as a brute-force reference; callers must respect
// the explicit diffusion stability limit (dt ~ dx^2).
//
// Manufactured solutions: closed-form target fields with analytic t/x/xx
// derivatives; substituting them into the governing equations yields source
// terms that make the targets exact solutions, giving known-answer
// convergence studies for the full coupled scheme.
//=============================================================================

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "mhd1d/grid.hpp"
#include "mhd1d/integrator.hpp"
#include "mhd1d/physics.hpp"

namespace mhd1d {

// One fully explicit step; shares div_center_flux / div_node_flux with the
// implicit scheme, so the two steppers differ only in time discretization.
inline State oracle_step(const Grid& g, const State& s, double dt,
                         const Parameters& p, const Sources* sources = nullptr) {
  if (!(dt > 0.0)) throw DomainError("oracle_step: dt must be > 0");
  check_state_shape(g, s);

  const int n = g.n_cells;
  const double rdx = 1.0 / g.dx;
  const double t0 = s.t;

  State out = s;
  out.t = s.t + dt;

  std::vector<double> visc_c(n), lam_c(n), gtot(n);
  for (int i = 0; i < n; ++i) {
    visc_c[i] = viscosity(s.v[i], p) / s.v[i];
    lam_c[i] = p.lambda_w / s.v[i];
    const double bb = s.b1[i] * s.b1[i] + s.b2[i] * s.b2[i];
    gtot[i] = pressure(s.v[i], s.theta[i], p) + 0.5 * bb;
  }
  const auto v_node = interp_center_to_node(g, s.v);
  std::vector<double> dcoef(g.n_nodes()), kcoef(g.n_nodes());
  const auto theta_node = interp_center_to_node(g, s.theta);
  for (int j = 0; j <= n; ++j) {
    dcoef[j] = p.nu_b / v_node[j];
    kcoef[j] = conductivity(theta_node[j], p) / v_node[j];
  }

  const auto diff_u = detail::div_center_flux(g, visc_c, s.u);
  const auto diff_w1 = detail::div_center_flux(g, lam_c, s.w1);
  const auto diff_w2 = detail::div_center_flux(g, lam_c, s.w2);
  const auto diff_b1 = detail::div_node_flux(g, dcoef, s.b1,
                                             BoundaryClosure::dirichlet_zero_ghost);
  const auto diff_b2 = detail::div_node_flux(g, dcoef, s.b2,
                                             BoundaryClosure::dirichlet_zero_ghost);
  const auto diff_t =
      detail::div_node_flux(g, kcoef, s.theta, BoundaryClosure::zero_flux);

  for (int j = 1; j < n; ++j) {
    const double x = g.x_node(j);
    out.u[j] = s.u[j] + dt * (-(gtot[j] - gtot[j - 1]) * rdx + diff_u[j] +
                              (sources ? detail::source_at(sources->u, x, t0)
                                       : 0.0));
    out.w1[j] = s.w1[j] + dt * ((s.b1[j] - s.b1[j - 1]) * rdx + diff_w1[j] +
                                (sources
                                     ? detail::source_at(sources->w1, x, t0)
                                     : 0.0));
    out.w2[j] = s.w2[j] + dt * ((s.b2[j] - s.b2[j - 1]) * rdx + diff_w2[j] +
                                (sources
                                     ? detail::source_at(sources->w2, x, t0)
                                     : 0.0));
  }
  out.u[0] = out.u[n] = 0.0;
  out.w1[0] = out.w1[n] = 0.0;
  out.w2[0] = out.w2[n] = 0.0;

  const auto ux = ddx_node_to_center(g, s.u);
  const auto w1x = ddx_node_to_center(g, s.w1);
  const auto w2x = ddx_node_to_center(g, s.w2);
  const auto b1x = ddx_center_to_node(g, s.b1,
                                      BoundaryClosure::dirichlet_zero_ghost,
                                      BoundaryClosure::dirichlet_zero_ghost);
  const auto b2x = ddx_center_to_node(g, s.b2,
                                      BoundaryClosure::dirichlet_zero_ghost,
                                      BoundaryClosure::dirichlet_zero_ghost);

  for (int i = 0; i < n; ++i) {
    const double x = g.x_center(i);
    out.v[i] = s.v[i] + dt * (ux[i] + (sources ? detail::source_at(sources->v,
                                                                   x, t0)
                                               : 0.0));
    if (!(out.v[i] > 0.0)) throw PositivityFailure("v", i, out.v[i]);
  }
  for (int i = 0; i < n; ++i) {
    const double x = g.x_center(i);
    const double m_new =
        s.v[i] * s.b1[i] +
        dt * ((s.w1[i + 1] - s.w1[i]) * rdx + diff_b1[i] +
              (sources ? detail::source_at(sources->b1, x, t0) : 0.0));
    out.b1[i] = m_new / out.v[i];
    const double m2_new =
        s.v[i] * s.b2[i] +
        dt * ((s.w2[i + 1] - s.w2[i]) * rdx + diff_b2[i] +
              (sources ? detail::source_at(sources->b2, x, t0) : 0.0));
    out.b2[i] = m2_new / out.v[i];
  }
  for (int i = 0; i < n; ++i) {
    const double x = g.x_center(i);
    const double bx2 = 0.5 * (b1x[i] * b1x[i] + b2x[i] * b2x[i] +
                              b1x[i + 1] * b1x[i + 1] + b2x[i + 1] * b2x[i + 1]);
    const double wx2 = w1x[i] * w1x[i] + w2x[i] * w2x[i];
    const double heat = (viscosity(s.v[i], p) * ux[i] * ux[i] +
                         p.lambda_w * wx2 + p.nu_b * bx2) /
                        s.v[i];
    const double adv = p.R * s.theta[i] * ux[i] / s.v[i];
    const double src =
        sources ? detail::source_at(sources->theta, x, t0) : 0.0;
    out.theta[i] =
        s.theta[i] + dt * (-adv + diff_t[i] + heat + src) / p.c_v;
    if (!(out.theta[i] > 0.0))
      throw PositivityFailure("theta", i, out.theta[i]);
  }
  return out;
}

//-----------------------------------------------------------------------------
// Manufactured solutions
//-----------------------------------------------------------------------------

struct FieldEval {
  double val = 0.0;
  double ddt = 0.0;
  double ddx = 0.0;
  double ddxx = 0.0;
};

using SpaceTimeField = std::function<FieldEval(double x, double t)>;

struct ManufacturedCase {
  std::string name;
  std::string description;
  SpaceTimeField v, u, w1, w2, b1, b2, theta;
};

inline SpaceTimeField constant_field(double c) {
  return [c](double, double) { return FieldEval{c, 0.0, 0.0, 0.0}; };
}

// base + amp e^{-t} sin(k pi x): vanishes at the walls for any k.
inline SpaceTimeField decaying_sine(double base, double amp, int k) {
  const double kp = k * M_PI;
  return [=](double x, double t) {
    const double e = amp * std::exp(-t);
    const double sn = std::sin(kp * x), cs = std::cos(kp * x);
    return FieldEval{base + e * sn, -e * sn, e * kp * cs, -e * kp * kp * sn};
  };
}

// base + amp e^{-t} cos(k pi x): wall-normal derivative vanishes for any k.
inline SpaceTimeField decaying_cosine(double base, double amp, int k) {
  const double kp = k * M_PI;
  return [=](double x, double t) {
    const double e = amp * std::exp(-t);
    const double sn = std::sin(kp * x), cs = std::cos(kp * x);
    return FieldEval{base + e * cs, -e * cs, -e * kp * sn, -e * kp * kp * cs};
  };
}

// Smooth, boundary-compatible default targets exercising all seven fields
// and every coupling term.
inline ManufacturedCase default_manufactured_case() {
  ManufacturedCase mc;
  mc.name = "default";
  mc.description =
      "v = 1 + 0.2 e^{-t} sin(2 pi x); u = 0.2 e^{-t} sin(pi x); "
      "w = 0.15 e^{-t} (sin(pi x), sin(2 pi x)); "
      "b = 0.15 e^{-t} (sin(2 pi x), sin(pi x)); "
      "theta = 1 + 0.2 e^{-t} cos(pi x)";
  mc.v = decaying_sine(1.0, 0.2, 2);
  mc.u = decaying_sine(0.0, 0.2, 1);
  mc.w1 = decaying_sine(0.0, 0.15, 1);
  mc.w2 = decaying_sine(0.0, 0.15, 2);
  mc.b1 = decaying_sine(0.0, 0.15, 2);
  mc.b2 = decaying_sine(0.0, 0.15, 1);
  mc.theta = decaying_cosine(1.0, 0.2, 1);
  return mc;
}

// Static volume, zero velocities and field: isolates the nonlinear heat
// operator (the momentum source holds u at zero up to discretization error).
inline ManufacturedCase heat_only_case() {
  ManufacturedCase mc;
  mc.name = "heat-only";
  mc.description = "v = 1 + 0.3 cos(2 pi x) static; u = w = b = 0; "
                   "theta = 1 + 0.4 e^{-t} cos(pi x)";
  const double kp = 2.0 * M_PI;
  mc.v = [kp](double x, double) {
    const double sn = std::sin(kp * x), cs = std::cos(kp * x);
    return FieldEval{1.0 + 0.3 * cs, 0.0, -0.3 * kp * sn, -0.3 * kp * kp * cs};
  };
  mc.u = constant_field(0.0);
  mc.w1 = constant_field(0.0);
  mc.w2 = constant_field(0.0);
  mc.b1 = constant_field(0.0);
  mc.b2 = constant_field(0.0);
  mc.theta = decaying_cosine(1.0, 0.4, 1);
  return mc;
}

inline ManufacturedCase constant_targets_case() {
  ManufacturedCase mc;
  mc.name = "constant";
  mc.description = "v = theta = 1, u = w = b = 0; all sources vanish";
  mc.v = constant_field(1.0);
  mc.u = constant_field(0.0);
  mc.w1 = constant_field(0.0);
  mc.w2 = constant_field(0.0);
  mc.b1 = constant_field(0.0);
  mc.b2 = constant_field(0.0);
  mc.theta = constant_field(1.0);
  return mc;
}

// Source terms obtained by substituting the targets into the governing
// equations and moving the residuals to the right-hand side.
inline Sources manufactured_sources(const ManufacturedCase& mc,
                                    const Parameters& p) {
  Sources src;
  src.v = [=](double x, double t) {
    return mc.v(x, t).ddt - mc.u(x, t).ddx;
  };
  src.u = [=](double x, double t) {
    const auto V = mc.v(x, t), U = mc.u(x, t), T = mc.theta(x, t);
    const auto B1 = mc.b1(x, t), B2 = mc.b2(x, t);
    const double press_x =
        p.R * (T.ddx * V.val - T.val * V.ddx) / (V.val * V.val);
    const double mag_x = B1.val * B1.ddx + B2.val * B2.ddx;
    const double mu = p.mu1 + p.mu2 * std::pow(V.val, -p.alpha);
    const double dmu = -p.alpha * p.mu2 * std::pow(V.val, -p.alpha - 1.0);
    const double visc = dmu * V.ddx * U.ddx / V.val + mu * U.ddxx / V.val -
                        mu * U.ddx * V.ddx / (V.val * V.val);
    return U.ddt + press_x + mag_x - visc;
  };
  auto make_w = [&p, &mc](SpaceTimeField w, SpaceTimeField b) {
    return [=](double x, double t) {
      const auto V = mc.v(x, t), W = w(x, t), B = b(x, t);
      const double visc = p.lambda_w * (W.ddxx / V.val -
                                        W.ddx * V.ddx / (V.val * V.val));
      return W.ddt - B.ddx - visc;
    };
  };
  src.w1 = make_w(mc.w1, mc.b1);
  src.w2 = make_w(mc.w2, mc.b2);
  auto make_b = [&p, &mc](SpaceTimeField w, SpaceTimeField b) {
    return [=](double x, double t) {
      const auto V = mc.v(x, t), W = w(x, t), B = b(x, t);
      const double diff = p.nu_b * (B.ddxx / V.val -
                                    B.ddx * V.ddx / (V.val * V.val));
      return V.ddt * B.val + V.val * B.ddt - W.ddx - diff;
    };
  };
  src.b1 = make_b(mc.w1, mc.b1);
  src.b2 = make_b(mc.w2, mc.b2);
  src.theta = [=](double x, double t) {
    const auto V = mc.v(x, t), U = mc.u(x, t), T = mc.theta(x, t);
    const auto W1 = mc.w1(x, t), W2 = mc.w2(x, t);
    const auto B1 = mc.b1(x, t), B2 = mc.b2(x, t);
    const double kap = p.kappa0 * std::pow(T.val, p.beta);
    const double dkap = p.kappa0 * p.beta * std::pow(T.val, p.beta - 1.0);
    const double cond = dkap * T.ddx * T.ddx / V.val + kap * T.ddxx / V.val -
                        kap * T.ddx * V.ddx / (V.val * V.val);
    const double mu = p.mu1 + p.mu2 * std::pow(V.val, -p.alpha);
    const double heat =
        (mu * U.ddx * U.ddx + p.lambda_w * (W1.ddx * W1.ddx + W2.ddx * W2.ddx) +
         p.nu_b * (B1.ddx * B1.ddx + B2.ddx * B2.ddx)) /
        V.val;
    return p.c_v * T.ddt + p.R * T.val * U.ddx / V.val - cond - heat;
  };
  return src;
}

// Project the targets at time t onto the staggered grid.
inline State sample_case(const Grid& g, const ManufacturedCase& mc, double t) {
  State s(g);
  s.t = t;
  for (int i = 0; i < g.n_cells; ++i) {
    const double x = g.x_center(i);
    s.v[i] = mc.v(x, t).val;
    s.theta[i] = mc.theta(x, t).val;
    s.b1[i] = mc.b1(x, t).val;
    s.b2[i] = mc.b2(x, t).val;
  }
  for (int j = 0; j <= g.n_cells; ++j) {
    const double x = g.x_node(j);
    s.u[j] = mc.u(x, t).val;
    s.w1[j] = mc.w1(x, t).val;
    s.w2[j] = mc.w2(x, t).val;
  }
  apply_boundary(g, s);
  return s;
}

enum class MmsTimeScaling {
  dx_squared, // dt proportional to dx^2: isolates the spatial order
  dx          // dt proportional to dx: combined space-time order
};

constexpr std::array<const char*, 7> kFieldNames = {
    "v", "u", "w1", "w2", "b1", "b2", "theta"};

struct ConvergenceReport {
  std::string case_name;
  MmsTimeScaling scaling = MmsTimeScaling::dx_squared;
  std::vector<int> levels;
  std::vector<double> dxs;
  std::vector<std::array<double, 7>> errors; // [level][field]
  std::array<double, 7> orders{};            // least-squares slopes

  double min_order() const {
    double m = orders[0];
    for (double o : orders) m = std::min(m, o);
    return m;
  }
};

namespace detail {

inline double l2_center_error(const Grid& g, const std::vector<double>& got,
                              const std::vector<double>& want) {
  double sum = 0.0;
  for (int i = 0; i < g.n_cells; ++i) {
    const double d = got[i] - want[i];
    sum += d * d;
  }
  return std::sqrt(sum * g.dx);
}

inline double l2_node_error(const Grid& g, const std::vector<double>& got,
                            const std::vector<double>& want) {
  double sum = 0.0;
  for (int j = 0; j <= g.n_cells; ++j) {
    const double d = got[j] - want[j];
    sum += d * d;
  }
  return std::sqrt(sum * g.dx);
}

inline std::array<double, 7> field_errors(const Grid& g, const State& got,
                                          const State& want) {
  return {l2_center_error(g, got.v, want.v),
          l2_node_error(g, got.u, want.u),
          l2_node_error(g, got.w1, want.w1),
          l2_node_error(g, got.w2, want.w2),
          l2_center_error(g, got.b1, want.b1),
          l2_center_error(g, got.b2, want.b2),
          l2_center_error(g, got.theta, want.theta)};
}

// slope of log(err) against log(dx), least squares over all levels
inline double fit_order(const std::vector<double>& dxs,
                        const std::vector<double>& errs) {
  const int n = static_cast<int>(dxs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double x = std::log(dxs[i]);
    const double y = std::log(std::max(errs[i], 1e-300));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace detail

// Advance the sourced scheme on each refinement level with fixed dt tied to
// dx (or dx^2) and measure discrete L2 errors against the targets at t_final.
inline ConvergenceReport run_mms(const ManufacturedCase& mc,
                                 const std::vector<int>& levels,
                                 double t_final, double dt_coeff,
                                 MmsTimeScaling scaling, const Parameters& p) {
  if (levels.size() < 3)
    throw DomainError("run_mms: need at least 3 refinement levels");

  const Sources src = manufactured_sources(mc, p);
  ConvergenceReport rep;
  rep.case_name = mc.name;
  rep.scaling = scaling;
  rep.levels = levels;

  for (int n : levels) {
    const Grid g(n);
    const double dt0 = (scaling == MmsTimeScaling::dx_squared)
                           ? dt_coeff * g.dx * g.dx
                           : dt_coeff * g.dx;
    State s = sample_case(g, mc, 0.0);
    while (s.t < t_final - 1e-14) {
      const double dt = std::min(dt0, t_final - s.t);
      s = step(g, s, dt, p, &src);
    }
    const State exact = sample_case(g, mc, t_final);
    rep.dxs.push_back(g.dx);
    rep.errors.push_back(detail::field_errors(g, s, exact));
  }

  for (int f = 0; f < 7; ++f) {
    std::vector<double> errs;
    for (const auto& e : rep.errors) errs.push_back(e[f]);
    rep.orders[f] = detail::fit_order(rep.dxs, errs);
  }
  return rep;
}

// Sup-norm distance between two states over all seven fields.
inline double state_distance(const State& a, const State& b) {
  double m = 0.0;
  auto scan = [&m](const std::vector<double>& x, const std::vector<double>& y) {
    for (std::size_t i = 0; i < x.size(); ++i)
      m = std::max(m, std::abs(x[i] - y[i]));
  };
  scan(a.v, b.v);
  scan(a.theta, b.theta);
  scan(a.b1, b.b1);
  scan(a.b2, b.b2);
  scan(a.u, b.u);
  scan(a.w1, b.w1);
  scan(a.w2, b.w2);
  return m;
}

// March the semi-implicit scheme and the explicit oracle in lockstep at each
// fixed dt and record the largest sup-norm discrepancy at shared times.
inline std::vector<double> oracle_equivalence(const Grid& g,
                                              const State& initial,
                                              const Parameters& p,
                                              const std::vector<double>& dts,
                                              double t_final) {
  std::vector<double> out;
  for (double dt0 : dts) {
    State a = initial, b = initial;
    double worst = 0.0;
    while (a.t < t_final - 1e-14) {
      const double dt = std::min(dt0, t_final - a.t);
      a = step(g, a, dt, p);
      b = oracle_step(g, b, dt, p);
      worst = std::max(worst, state_distance(a, b));
    }
    out.push_back(worst);
  }
  return out;
}

} // namespace mhd1d
