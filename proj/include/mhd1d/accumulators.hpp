#pragma once

//=============================================================================
// Running time integrals carried along a trajectory:
//
//   yint    Int_0^t Int (u^2 + v|b|^2/2 + theta) dx dtau   (Y(t) exponent)
//   rint_i  Int_0^t (theta + v|b|^2/2)_i / (D_i Y) dtau    (bracket of the
//                                                           representation)
//   vint    Int_0^t V(s) ds                                 (dissipation)
//
// yint and vint use the trapezoid rule over committed states. rint uses a
// product (exponential-fit) rule: its integrand grows like exp(t) through
// 1/Y, and the trapezoid's O(dt^2) relative error is visible at the
// tolerances the rest-state identity is checked to. The exponential fit is
// exact on constant states and second-order accurate otherwise.
//=============================================================================

#include <cmath>
#include <vector>

#include "mhd1d/functionals.hpp"
#include "mhd1d/grid.hpp"
#include "mhd1d/physics.hpp"

namespace mhd1d {

namespace detail {
// Integral over one step of a positive integrand sampled at the endpoints,
// fitted with an exponential through the two samples.
inline double expfit_increment(double qa, double qb, double dt) {
  if (!(qa > 0.0) || !(qb > 0.0)) return 0.5 * dt * (qa + qb);
  const double r = (qb - qa) / qa;
  const double lr = std::log1p(r);
  if (std::abs(lr) < 1e-8) return 0.5 * dt * (qa + qb);
  return dt * (qb - qa) / lr;
}
} // namespace detail

struct Accumulators {
  double yint = 0.0;
  double vint = 0.0;
  std::vector<double> rint; // per cell

  RepresentationFrozen frozen;

  // integrand samples at the last committed state, for the next increment
  double prev_y_integrand = 0.0;
  double prev_v = 0.0;
  std::vector<double> prev_q;

  static Accumulators init(const Grid& g, const State& s0,
                           const Parameters& p) {
    Accumulators a;
    a.rint.assign(g.n_cells, 0.0);
    a.frozen = freeze_initial_profile(g, s0);
    a.prev_y_integrand = y_time_integrand(g, s0);
    a.prev_v = dissipation_rate(g, s0, p);
    a.prev_q = bracket_integrand(g, s0, a, p);
    return a;
  }

  // (theta + v|b|^2/2) / (D Y) per cell, consistent with the yint value the
  // accumulator currently holds.
  static std::vector<double> bracket_integrand(const Grid& g, const State& s,
                                               const Accumulators& a,
                                               const Parameters& p) {
    const double y = representation_y(g, s, a.yint, p);
    const auto d = representation_d(g, s, a.frozen, p);
    std::vector<double> q(g.n_cells);
    for (int i = 0; i < g.n_cells; ++i) {
      const double bb = s.b1[i] * s.b1[i] + s.b2[i] * s.b2[i];
      q[i] = (s.theta[i] + 0.5 * s.v[i] * bb) / (d[i] * y);
    }
    return q;
  }

  // Fold in one committed step ending at state s_new.
  void update(const Grid& g, const State& s_new, double dt,
              const Parameters& p) {
    const double g_new = y_time_integrand(g, s_new);
    yint += 0.5 * dt * (prev_y_integrand + g_new);
    prev_y_integrand = g_new;

    const double v_new = dissipation_rate(g, s_new, p);
    vint += 0.5 * dt * (prev_v + v_new);
    prev_v = v_new;

    const auto q_new = bracket_integrand(g, s_new, *this, p);
    for (int i = 0; i < g.n_cells; ++i)
      rint[i] += detail::expfit_increment(prev_q[i], q_new[i], dt);
    prev_q = q_new;
  }
};

} // namespace mhd1d
