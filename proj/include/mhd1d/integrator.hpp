#pragma once

//=============================================================================
// Semi-implicit time advancement of the seven-field system
//
//   v_t = u_x
//   u_t + (P + |b|^2/2)_x = (mu(v) u_x / v)_x
//   w_t - b_x = (lambda w_x / v)_x
//   (v b)_t - w_x = (nu b_x / v)_x
//   c_v theta_t + R theta u_x / v
//       = (kappa(theta) theta_x / v)_x
//       + (mu(v) u_x^2 + lambda |w_x|^2 + nu |b_x|^2) / v
//
// advanced by one sequential sweep per step, each sub-solve a tridiagonal
// system with lagged nonlinear coefficients:
//
//   (a) u  implicit, pressure/magnetic gradient explicit at time n
//   (b) v  conservative update from the new u (telescopes: exact mass)
//   (c) w  implicit, b_x explicit at time n, coefficients on the new v
//   (d) b  implicit in the conserved variable m = v b
//   (e) theta implicit with lagged conductivity kappa(theta^n); sources
//       from the new u, w, b gradients are nonnegative by construction
//
// Every solve is formulated in delta form (solve for the increment, with the
// explicit residual of the current state on the right-hand side), so any
// spatially constant state with u = w = b = 0 is a fixed point with residuals
// identically zero before rounding.
//
// Positivity of v and theta is checked after each sub-step; a violation
// raises PositivityFailure and the caller (advance) retries the whole step
// with dt halved. Values are never clipped.
//=============================================================================

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "mhd1d/accumulators.hpp"
#include "mhd1d/errors.hpp"
#include "mhd1d/grid.hpp"
#include "mhd1d/physics.hpp"
#include "mhd1d/tridiagonal.hpp"

namespace mhd1d {

struct StepControls {
  double cfl = 0.4;
  double dt_min = 1e-10;
  double dt_max = 0.1;
  int max_retries = 8;
  double t_final = 1.0;
  bool disable_magnetic = false; // freeze w and b (Navier-Stokes reduction)

  void validate() const {
    if (!(cfl > 0.0 && cfl <= 1.0))
      throw DomainError("StepControls: cfl must be in (0,1]");
    if (!(dt_min > 0.0 && dt_min <= dt_max))
      throw DomainError("StepControls: need 0 < dt_min <= dt_max");
    if (max_retries < 1)
      throw DomainError("StepControls: max_retries must be >= 1");
  }
};

// Optional manufactured source terms, one per equation, evaluated pointwise
// at (x, t). Null members contribute nothing.
struct Sources {
  using Fn = std::function<double(double x, double t)>;
  Fn v, u, w1, w2, b1, b2, theta;
};

namespace detail {

inline double source_at(const Sources::Fn& f, double x, double t) {
  return f ? f(x, t) : 0.0;
}

// Divergence at interior nodes of the center-sited flux c * f_x, where f is
// a node field; boundary entries are 0 (those nodes carry Dirichlet data).
inline std::vector<double> div_center_flux(const Grid& g,
                                           const std::vector<double>& coeff_c,
                                           const std::vector<double>& f_nodes) {
  const int n = g.n_cells;
  const double rdx2 = 1.0 / (g.dx * g.dx);
  std::vector<double> out(g.n_nodes(), 0.0);
  for (int j = 1; j < n; ++j)
    out[j] = (coeff_c[j] * (f_nodes[j + 1] - f_nodes[j]) -
              coeff_c[j - 1] * (f_nodes[j] - f_nodes[j - 1])) *
             rdx2;
  return out;
}

// Divergence at centers of the node-sited flux k * f_x, where f is a center
// field and its wall gradient uses the given ghost closure.
inline std::vector<double> div_node_flux(const Grid& g,
                                         const std::vector<double>& coeff_n,
                                         const std::vector<double>& f_centers,
                                         BoundaryClosure closure) {
  const auto fx = ddx_center_to_node(g, f_centers, closure, closure);
  const int n = g.n_cells;
  const double rdx = 1.0 / g.dx;
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i)
    out[i] = (coeff_n[i + 1] * fx[i + 1] - coeff_n[i] * fx[i]) * rdx;
  return out;
}

// Implicit node-field solve in delta form:
//   delta/dt - (c delta_x)_x = rhs  at interior nodes, delta = 0 at walls.
inline void solve_node_diffusion(const Grid& g, double dt,
                                 const std::vector<double>& coeff_c,
                                 const std::vector<double>& rhs_interior,
                                 std::vector<double>& field) {
  const int n = g.n_cells;
  const int m = n - 1;
  const double rdx2 = 1.0 / (g.dx * g.dx);
  std::vector<double> lo(m), di(m), up(m), rhs = rhs_interior;
  for (int j = 1; j < n; ++j) {
    const double aL = coeff_c[j - 1] * rdx2;
    const double aU = coeff_c[j] * rdx2;
    lo[j - 1] = -aL;
    up[j - 1] = -aU;
    di[j - 1] = 1.0 / dt + aL + aU;
  }
  solve_tridiagonal(lo, di, up, rhs);
  field[0] = 0.0;
  field[n] = 0.0;
  for (int j = 1; j < n; ++j) field[j] += rhs[j - 1];
}

} // namespace detail

// CFL-type bound from the Lagrangian fast-magnetoacoustic speed estimate
//   s_i = sqrt(gamma P_i v_i + v_i |b_i|^2) / v_i,
// clamped to [dt_min, dt_max].
inline double stable_dt(const Grid& g, const State& s,
                        const StepControls& controls, const Parameters& p) {
  const double gam = p.gamma();
  double smax = 0.0;
  for (int i = 0; i < g.n_cells; ++i) {
    const double bb = s.b1[i] * s.b1[i] + s.b2[i] * s.b2[i];
    const double pv = pressure(s.v[i], s.theta[i], p) * s.v[i];
    const double si = std::sqrt(gam * pv + s.v[i] * bb) / s.v[i];
    if (si > smax) smax = si;
  }
  double dt = (smax > 0.0) ? controls.cfl * g.dx / smax : controls.dt_max;
  if (dt < controls.dt_min) dt = controls.dt_min;
  if (dt > controls.dt_max) dt = controls.dt_max;
  return dt;
}

// One semi-implicit step of size dt. Does not mutate its input; throws
// PositivityFailure (leaving no partial effects visible to the caller) when
// the updated v or theta would go nonpositive.
inline State step(const Grid& g, const State& s, double dt,
                  const Parameters& p, const Sources* sources = nullptr,
                  bool evolve_magnetic = true) {
  if (!(dt > 0.0)) throw DomainError("step: dt must be > 0");
  check_state_shape(g, s);

  const int n = g.n_cells;
  const double rdx = 1.0 / g.dx;
  const double rdx2 = rdx * rdx;
  const double t_new = s.t + dt;

  State out = s;
  out.t = t_new;

  // --- (a) longitudinal momentum ---------------------------------------
  std::vector<double> visc_c(n), gtot(n);
  for (int i = 0; i < n; ++i) {
    visc_c[i] = viscosity(s.v[i], p) / s.v[i];
    const double bb = s.b1[i] * s.b1[i] + s.b2[i] * s.b2[i];
    gtot[i] = pressure(s.v[i], s.theta[i], p) + 0.5 * bb;
  }
  {
    const auto diff_u = detail::div_center_flux(g, visc_c, s.u);
    std::vector<double> rhs(n - 1);
    for (int j = 1; j < n; ++j)
      rhs[j - 1] = -(gtot[j] - gtot[j - 1]) * rdx + diff_u[j] +
                   (sources ? detail::source_at(sources->u, g.x_node(j), t_new)
                            : 0.0);
    detail::solve_node_diffusion(g, dt, visc_c, rhs, out.u);
  }

  // --- (b) specific volume (telescoping, conserves mass exactly) -------
  for (int i = 0; i < n; ++i) {
    double dv = (out.u[i + 1] - out.u[i]) * rdx;
    if (sources) dv += detail::source_at(sources->v, g.x_center(i), t_new);
    out.v[i] = s.v[i] + dt * dv;
    if (!(out.v[i] > 0.0)) throw PositivityFailure("v", i, out.v[i]);
  }

  const auto v_node = interp_center_to_node(g, out.v);

  // --- (c) transverse velocity ------------------------------------------
  if (evolve_magnetic) {
    std::vector<double> lam_c(n);
    for (int i = 0; i < n; ++i) lam_c[i] = p.lambda_w / out.v[i];
    auto solve_w = [&](const std::vector<double>& w,
                       const std::vector<double>& b, const Sources::Fn& src,
                       std::vector<double>& w_out) {
      const auto diff_w = detail::div_center_flux(g, lam_c, w);
      std::vector<double> rhs(n - 1);
      for (int j = 1; j < n; ++j)
        rhs[j - 1] = (b[j] - b[j - 1]) * rdx + diff_w[j] +
                     (sources ? detail::source_at(src, g.x_node(j), t_new)
                              : 0.0);
      detail::solve_node_diffusion(g, dt, lam_c, rhs, w_out);
    };
    solve_w(s.w1, s.b1, sources ? sources->w1 : Sources::Fn{}, out.w1);
    solve_w(s.w2, s.b2, sources ? sources->w2 : Sources::Fn{}, out.w2);

    // --- (d) magnetic field, conserved variable m = v b -----------------
    std::vector<double> dcoef(g.n_nodes());
    for (int j = 0; j <= n; ++j) dcoef[j] = p.nu_b / v_node[j];
    auto solve_b = [&](const std::vector<double>& b,
                       const std::vector<double>& w_new,
                       const Sources::Fn& src, std::vector<double>& b_out) {
      const auto diff_b =
          detail::div_node_flux(g, dcoef, b, BoundaryClosure::dirichlet_zero_ghost);
      std::vector<double> lo(n), di(n), up(n), rhs(n);
      for (int i = 0; i < n; ++i) {
        const double dL = (i == 0) ? 2.0 * dcoef[0] : dcoef[i];
        const double dU = (i == n - 1) ? 2.0 * dcoef[n] : dcoef[i + 1];
        lo[i] = (i == 0) ? 0.0 : -dcoef[i] * rdx2;
        up[i] = (i == n - 1) ? 0.0 : -dcoef[i + 1] * rdx2;
        di[i] = out.v[i] / dt + (dL + dU) * rdx2;
        rhs[i] = (w_new[i + 1] - w_new[i]) * rdx + diff_b[i] -
                 (out.v[i] - s.v[i]) / dt * b[i] +
                 (sources ? detail::source_at(src, g.x_center(i), t_new)
                          : 0.0);
      }
      solve_tridiagonal(lo, di, up, rhs);
      for (int i = 0; i < n; ++i) b_out[i] = b[i] + rhs[i];
    };
    solve_b(s.b1, out.w1, sources ? sources->b1 : Sources::Fn{}, out.b1);
    solve_b(s.b2, out.w2, sources ? sources->b2 : Sources::Fn{}, out.b2);
  }

  // --- (e) temperature ----------------------------------------------------
  {
    const auto ux = ddx_node_to_center(g, out.u);
    const auto w1x = ddx_node_to_center(g, out.w1);
    const auto w2x = ddx_node_to_center(g, out.w2);
    const auto b1x = ddx_center_to_node(g, out.b1,
                                        BoundaryClosure::dirichlet_zero_ghost,
                                        BoundaryClosure::dirichlet_zero_ghost);
    const auto b2x = ddx_center_to_node(g, out.b2,
                                        BoundaryClosure::dirichlet_zero_ghost,
                                        BoundaryClosure::dirichlet_zero_ghost);

    const auto theta_node = interp_center_to_node(g, s.theta);
    std::vector<double> kcoef(g.n_nodes());
    for (int j = 0; j <= n; ++j)
      kcoef[j] = conductivity(theta_node[j], p) / (v_node[j] * p.c_v);

    const auto diff_t =
        detail::div_node_flux(g, kcoef, s.theta, BoundaryClosure::zero_flux);

    std::vector<double> lo(n), di(n), up(n), rhs(n);
    for (int i = 0; i < n; ++i) {
      const double a = (p.R / p.c_v) * ux[i] / out.v[i];
      const double bx2 = 0.5 * (b1x[i] * b1x[i] + b2x[i] * b2x[i] +
                                b1x[i + 1] * b1x[i + 1] +
                                b2x[i + 1] * b2x[i + 1]);
      const double wx2 = w1x[i] * w1x[i] + w2x[i] * w2x[i];
      const double heat = (viscosity(out.v[i], p) * ux[i] * ux[i] +
                           p.lambda_w * wx2 + p.nu_b * bx2) /
                          (out.v[i] * p.c_v);
      // zero-flux walls: boundary-node flux entries drop out of row 0, n-1
      const double kL = (i == 0) ? 0.0 : kcoef[i];
      const double kU = (i == n - 1) ? 0.0 : kcoef[i + 1];
      lo[i] = -kL * rdx2;
      up[i] = -kU * rdx2;
      di[i] = 1.0 / dt + a + (kL + kU) * rdx2;
      rhs[i] = -a * s.theta[i] + diff_t[i] + heat +
               (sources ? detail::source_at(sources->theta, g.x_center(i),
                                            t_new) /
                              p.c_v
                        : 0.0);
    }
    solve_tridiagonal(lo, di, up, rhs);
    for (int i = 0; i < n; ++i) {
      out.theta[i] = s.theta[i] + rhs[i];
      if (!(out.theta[i] > 0.0))
        throw PositivityFailure("theta", i, out.theta[i]);
    }
  }

  return out;
}

struct StepEvent {
  long step = 0;
  double dt = 0.0;
  int retries = 0; // positivity retries consumed by this step
  const State& state;
  const Accumulators& accum;
};

using StepObserver = std::function<void(const StepEvent&)>;

struct AdvanceResult {
  State state;
  Accumulators accum;
  long steps = 0;
  long total_retries = 0;
};

// Run loop: pick a stable dt, attempt the step, halve and retry on
// positivity failure, fold committed states into the accumulators
// (trapezoid / product rule), and notify observers.
inline AdvanceResult advance(const Grid& g, State state,
                             const StepControls& controls,
                             const Parameters& p,
                             const std::vector<StepObserver>& observers = {},
                             const Sources* sources = nullptr) {
  controls.validate();
  check_state_shape(g, state);
  check_state_positive(state);
  apply_boundary(g, state);

  AdvanceResult res{std::move(state), Accumulators{}, 0, 0};
  res.accum = Accumulators::init(g, res.state, p);

  const double t_end = controls.t_final;
  while (res.state.t < t_end - 1e-14 * std::max(1.0, std::abs(t_end))) {
    double dt = stable_dt(g, res.state, controls, p);
    if (res.state.t + dt > t_end) dt = t_end - res.state.t; // landing step

    int retries = 0;
    for (;;) {
      try {
        State next = step(g, res.state, dt, p, sources,
                          !controls.disable_magnetic);
        res.accum.update(g, next, dt, p);
        res.state = std::move(next);
        break;
      } catch (const PositivityFailure&) {
        ++retries;
        dt *= 0.5;
        if (retries > controls.max_retries || dt < controls.dt_min)
          throw DtUnderflow(dt, controls.dt_min);
      }
    }
    ++res.steps;
    res.total_retries += retries;
    for (const auto& obs : observers)
      obs(StepEvent{res.steps, dt, retries, res.state, res.accum});
  }
  return res;
}

} // namespace mhd1d
