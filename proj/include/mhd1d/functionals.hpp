#pragma once

//=============================================================================
// Pointwise and integral functionals evaluated along trajectories: the
// conserved mass and energy integrals, the entropy-type functional and its
// dissipation rate V(t), and the kernels B0(x), D(x,t), Y(t) of the
// representation formula
//
//   v = B0 * D * Y * { 1 + (1/B0) * Int_0^t (theta + v|b|^2/2) / (D Y) dtau }.
//
// Center quadratures are midpoint sums; node quantities enter center
// integrands as means of adjacent squares.
//=============================================================================

#include <cmath>
#include <vector>

#include "mhd1d/grid.hpp"
#include "mhd1d/physics.hpp"

namespace mhd1d {

// Integral over (0,1) of a center field, midpoint rule.
inline double integrate_centers(const Grid& g, const std::vector<double>& f) {
  double s = 0.0;
  for (double x : f) s += x;
  return s * g.dx;
}

inline double mass(const Grid& g, const State& s) {
  return integrate_centers(g, s.v);
}

// Cumulative integral Int_0^{x_j} f dy over nodes, trapezoid rule.
inline std::vector<double> cumulative_node_integral(
    const Grid& g, const std::vector<double>& f) {
  detail::check_length(f.size(), g.n_nodes(), "cumulative_node_integral");
  std::vector<double> out(g.n_nodes(), 0.0);
  for (int j = 1; j <= g.n_cells; ++j)
    out[j] = out[j - 1] + 0.5 * g.dx * (f[j - 1] + f[j]);
  return out;
}

inline std::vector<double> node_to_center_mean(const Grid& g,
                                               const std::vector<double>& f) {
  detail::check_length(f.size(), g.n_nodes(), "node_to_center_mean");
  std::vector<double> out(g.n_cells);
  for (int i = 0; i < g.n_cells; ++i) out[i] = 0.5 * (f[i] + f[i + 1]);
  return out;
}

// Integrand of Y(t)'s time integral: Int (u^2 + v|b|^2/2 + theta) dx.
inline double y_time_integrand(const Grid& g, const State& s) {
  const auto u2 = center_mean_of_node_squares(g, s.u);
  double sum = 0.0;
  for (int i = 0; i < g.n_cells; ++i) {
    const double bb = s.b1[i] * s.b1[i] + s.b2[i] * s.b2[i];
    sum += u2[i] + 0.5 * s.v[i] * bb + s.theta[i];
  }
  return sum * g.dx;
}

// Dissipation rate
//   V(t) = Int ( kappa(theta) theta_x^2 / (v theta^2)
//              + mu(v) u_x^2 / (v theta)
//              + lambda |w_x|^2 / (v theta)
//              + nu |b_x|^2 / (v theta) ) dx,
// nonnegative by construction.
inline double dissipation_rate(const Grid& g, const State& s,
                               const Parameters& p) {
  const auto ux = ddx_node_to_center(g, s.u);
  const auto w1x = ddx_node_to_center(g, s.w1);
  const auto w2x = ddx_node_to_center(g, s.w2);
  const auto tx = ddx_center_to_node(g, s.theta, BoundaryClosure::zero_flux,
                                     BoundaryClosure::zero_flux);
  const auto b1x = ddx_center_to_node(g, s.b1,
                                      BoundaryClosure::dirichlet_zero_ghost,
                                      BoundaryClosure::dirichlet_zero_ghost);
  const auto b2x = ddx_center_to_node(g, s.b2,
                                      BoundaryClosure::dirichlet_zero_ghost,
                                      BoundaryClosure::dirichlet_zero_ghost);
  double sum = 0.0;
  for (int i = 0; i < g.n_cells; ++i) {
    const double v = s.v[i];
    const double th = s.theta[i];
    if (!(v > 0.0) || !(th > 0.0))
      throw DomainError("dissipation_rate: nonpositive v or theta");
    const double tx2 = 0.5 * (tx[i] * tx[i] + tx[i + 1] * tx[i + 1]);
    const double bx2 = 0.5 * (b1x[i] * b1x[i] + b2x[i] * b2x[i] +
                              b1x[i + 1] * b1x[i + 1] + b2x[i + 1] * b2x[i + 1]);
    const double wx2 = w1x[i] * w1x[i] + w2x[i] * w2x[i];
    sum += conductivity(th, p) * tx2 / (v * th * th) +
           viscosity(v, p) * ux[i] * ux[i] / (v * th) +
           p.lambda_w * wx2 / (v * th) + p.nu_b * bx2 / (v * th);
  }
  return sum * g.dx;
}

// Integrand of the conserved total energy: c_v theta + (u^2+|w|^2+v|b|^2)/2.
inline double total_energy(const Grid& g, const State& s, const Parameters& p) {
  const auto u2 = center_mean_of_node_squares(g, s.u);
  const auto w12 = center_mean_of_node_squares(g, s.w1);
  const auto w22 = center_mean_of_node_squares(g, s.w2);
  double sum = 0.0;
  for (int i = 0; i < g.n_cells; ++i) {
    const double bb = s.b1[i] * s.b1[i] + s.b2[i] * s.b2[i];
    sum += p.c_v * s.theta[i] +
           0.5 * (u2[i] + w12[i] + w22[i] + s.v[i] * bb);
  }
  return sum * g.dx;
}

// Entropy-type functional exactly as printed in the a-priori estimate:
//   Int ( u^2 + |w|^2 + v|b|^2 + (v - ln v) + (theta - ln theta) ) dx.
inline double entropy_functional_paper(const Grid& g, const State& s) {
  const auto u2 = center_mean_of_node_squares(g, s.u);
  const auto w12 = center_mean_of_node_squares(g, s.w1);
  const auto w22 = center_mean_of_node_squares(g, s.w2);
  double sum = 0.0;
  for (int i = 0; i < g.n_cells; ++i) {
    const double v = s.v[i];
    const double th = s.theta[i];
    if (!(v > 0.0) || !(th > 0.0))
      throw DomainError("entropy_functional_paper: nonpositive v or theta");
    const double bb = s.b1[i] * s.b1[i] + s.b2[i] * s.b2[i];
    sum += u2[i] + w12[i] + w22[i] + v * bb + (v - std::log(v)) +
           (th - std::log(th));
  }
  return sum * g.dx;
}

// The variant with 1/2 kinetic weights and -1 shifts. In the normalized
// regime it satisfies the exact continuum balance
//   d/dt e_balance = -V(t),
// which the refinement diagnostics test. Zero on the rest state.
inline double entropy_functional_balance(const Grid& g, const State& s) {
  const auto u2 = center_mean_of_node_squares(g, s.u);
  const auto w12 = center_mean_of_node_squares(g, s.w1);
  const auto w22 = center_mean_of_node_squares(g, s.w2);
  double sum = 0.0;
  for (int i = 0; i < g.n_cells; ++i) {
    const double v = s.v[i];
    const double th = s.theta[i];
    if (!(v > 0.0) || !(th > 0.0))
      throw DomainError("entropy_functional_balance: nonpositive v or theta");
    const double bb = s.b1[i] * s.b1[i] + s.b2[i] * s.b2[i];
    sum += 0.5 * (u2[i] + w12[i] + w22[i] + v * bb) +
           (v - std::log(v) - 1.0) + (th - std::log(th) - 1.0);
  }
  return sum * g.dx;
}

// Int v^{-alpha} dx, the quantity whose uniform-in-time bound controls the
// lower bound of v when alpha > 1.
inline double l1_v_neg_alpha(const Grid& g, const State& s,
                             const Parameters& p) {
  double sum = 0.0;
  for (int i = 0; i < g.n_cells; ++i) {
    if (!(s.v[i] > 0.0)) throw DomainError("l1_v_neg_alpha: nonpositive v");
    sum += std::pow(s.v[i], -p.alpha);
  }
  return sum * g.dx;
}

// Discrete H^1 seminorms. Center fields are differenced at interior nodes,
// node fields at centers.
inline double h1_seminorm_center_field(const Grid& g,
                                       const std::vector<double>& f) {
  detail::check_length(f.size(), g.n_cells, "h1_seminorm_center_field");
  double sum = 0.0;
  const double rdx = 1.0 / g.dx;
  for (int j = 1; j < g.n_cells; ++j) {
    const double d = (f[j] - f[j - 1]) * rdx;
    sum += d * d;
  }
  return std::sqrt(sum * g.dx);
}

inline double h1_seminorm_node_field(const Grid& g,
                                     const std::vector<double>& f) {
  const auto d = ddx_node_to_center(g, f);
  double sum = 0.0;
  for (double x : d) sum += x * x;
  return std::sqrt(sum * g.dx);
}

//-----------------------------------------------------------------------------
// Representation-formula kernels. All expressions are the normalized-regime
// identities; the exponentials cancel in closed form on constant states.
//-----------------------------------------------------------------------------

inline double f_alpha_integral(const Grid& g, const std::vector<double>& v,
                               double alpha) {
  double sum = 0.0;
  for (double x : v) sum += f_alpha(x, alpha);
  return sum * g.dx;
}

// B0(x) = v0 exp{ -v0^{-alpha} - Int f_alpha(v0) dx }, per cell.
inline std::vector<double> representation_b0(const Grid& g, const State& s0,
                                             const Parameters& p) {
  const double f0 = f_alpha_integral(g, s0.v, p.alpha);
  std::vector<double> out(g.n_cells);
  for (int i = 0; i < g.n_cells; ++i) {
    if (!(s0.v[i] > 0.0)) throw DomainError("representation_b0: nonpositive v0");
    out[i] = s0.v[i] * std::exp(-std::pow(s0.v[i], -p.alpha) - f0);
  }
  return out;
}

// The pieces of D(x,t) frozen at t = 0: the cumulative velocity integral
// Int_0^x u0 dy at centers and the scalar Int_0^1 v0 Int_0^x u0 dy dx.
struct RepresentationFrozen {
  std::vector<double> u0_cum_center;
  double c0 = 0.0;
};

inline RepresentationFrozen freeze_initial_profile(const Grid& g,
                                                   const State& s0) {
  RepresentationFrozen out;
  out.u0_cum_center =
      node_to_center_mean(g, cumulative_node_integral(g, s0.u));
  double c0 = 0.0;
  for (int i = 0; i < g.n_cells; ++i) c0 += s0.v[i] * out.u0_cum_center[i];
  out.c0 = c0 * g.dx;
  return out;
}

// D(x,t) = exp{ v^{-alpha} + Int_0^x (u - u0) dy
//               - Int_0^1 v Int_0^x u dy dx + Int_0^1 v0 Int_0^x u0 dy dx }.
inline std::vector<double> representation_d(const Grid& g, const State& s,
                                            const RepresentationFrozen& frozen,
                                            const Parameters& p) {
  const auto ucum =
      node_to_center_mean(g, cumulative_node_integral(g, s.u));
  double vu = 0.0;
  for (int i = 0; i < g.n_cells; ++i) vu += s.v[i] * ucum[i];
  vu *= g.dx;
  std::vector<double> out(g.n_cells);
  for (int i = 0; i < g.n_cells; ++i) {
    if (!(s.v[i] > 0.0)) throw DomainError("representation_d: nonpositive v");
    out[i] = std::exp(std::pow(s.v[i], -p.alpha) + ucum[i] -
                      frozen.u0_cum_center[i] - vu + frozen.c0);
  }
  return out;
}

// Y(t) = exp{ Int f_alpha(v) dx - Int_0^t Int (u^2 + v|b|^2/2 + theta) dx dtau },
// with the time integral supplied by the caller's accumulator.
inline double representation_y(const Grid& g, const State& s, double yint,
                               const Parameters& p) {
  return std::exp(f_alpha_integral(g, s.v, p.alpha) - yint);
}

} // namespace mhd1d
