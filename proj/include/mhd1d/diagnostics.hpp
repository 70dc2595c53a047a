#pragma once

//=============================================================================
// Trajectory diagnostics: every functional the a-priori analysis is built
// from, sampled along computed runs, plus the pointwise reconstruction of v
// through the representation formula and a monitor for the
// bounded-away-from-vacuum assertions.
//=============================================================================

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mhd1d/accumulators.hpp"
#include "mhd1d/functionals.hpp"
#include "mhd1d/grid.hpp"
#include "mhd1d/physics.hpp"

namespace mhd1d {

struct DiagnosticsSample {
  double t = 0.0;
  double mass = 0.0;
  double total_energy = 0.0;
  double e_paper = 0.0;   // entropy functional as printed
  double e_balance = 0.0; // variant satisfying d/dt e_balance = -V
  double V = 0.0;         // dissipation rate
  double vint = 0.0;      // Int_0^t V
  double min_v = 0.0, max_v = 0.0;
  double min_theta = 0.0, max_theta = 0.0;
  double l1_v_neg_alpha = 0.0;
  double h1_v = 0.0, h1_u = 0.0, h1_w = 0.0, h1_b = 0.0, h1_theta = 0.0;
};

inline DiagnosticsSample sample(const Grid& g, const State& s,
                                const Accumulators& acc, const Parameters& p) {
  check_state_shape(g, s);
  check_state_positive(s);

  DiagnosticsSample d;
  d.t = s.t;
  d.mass = mass(g, s);
  d.total_energy = total_energy(g, s, p);
  d.e_paper = entropy_functional_paper(g, s);
  d.e_balance = entropy_functional_balance(g, s);
  d.V = dissipation_rate(g, s, p);
  d.vint = acc.vint;
  d.min_v = *std::min_element(s.v.begin(), s.v.end());
  d.max_v = *std::max_element(s.v.begin(), s.v.end());
  d.min_theta = *std::min_element(s.theta.begin(), s.theta.end());
  d.max_theta = *std::max_element(s.theta.begin(), s.theta.end());
  d.l1_v_neg_alpha = l1_v_neg_alpha(g, s, p);
  d.h1_v = h1_seminorm_center_field(g, s.v);
  d.h1_theta = h1_seminorm_center_field(g, s.theta);
  const double hb1 = h1_seminorm_center_field(g, s.b1);
  const double hb2 = h1_seminorm_center_field(g, s.b2);
  d.h1_b = std::sqrt(hb1 * hb1 + hb2 * hb2);
  d.h1_u = h1_seminorm_node_field(g, s.u);
  const double hw1 = h1_seminorm_node_field(g, s.w1);
  const double hw2 = h1_seminorm_node_field(g, s.w2);
  d.h1_w = std::sqrt(hw1 * hw1 + hw2 * hw2);
  return d;
}

// Effective stress sigma = mu u_x / v - P - |b|^2/2 per cell (P = R theta/v;
// the normalized regime reduces it to theta/v as in the momentum identity).
inline std::vector<double> effective_stress(const Grid& g, const State& s,
                                            const Parameters& p) {
  check_state_shape(g, s);
  const auto ux = ddx_node_to_center(g, s.u);
  std::vector<double> out(g.n_cells);
  for (int i = 0; i < g.n_cells; ++i) {
    const double bb = s.b1[i] * s.b1[i] + s.b2[i] * s.b2[i];
    out[i] = viscosity(s.v[i], p) * ux[i] / s.v[i] -
             pressure(s.v[i], s.theta[i], p) - 0.5 * bb;
  }
  return out;
}

struct RepresentationReport {
  double t = 0.0;
  std::vector<double> b0;
  std::vector<double> d;
  double y = 0.0;
  std::vector<double> v_reconstructed;
  std::vector<double> rel_err; // |v - v_reconstructed| / v per cell
  double max_rel_err = 0.0;
};

// Reconstructs v from the representation formula using the trajectory's
// accumulated integrals and compares against the evolved field.
inline RepresentationReport representation_report(const Grid& g,
                                                  const State& s,
                                                  const Accumulators& acc,
                                                  const State& initial_state,
                                                  const Parameters& p) {
  check_state_shape(g, s);
  check_state_positive(s);

  RepresentationReport r;
  r.t = s.t;
  r.b0 = representation_b0(g, initial_state, p);
  r.d = representation_d(g, s, acc.frozen, p);
  r.y = representation_y(g, s, acc.yint, p);
  r.v_reconstructed.resize(g.n_cells);
  r.rel_err.resize(g.n_cells);
  double worst = 0.0;
  for (int i = 0; i < g.n_cells; ++i) {
    r.v_reconstructed[i] =
        r.b0[i] * r.d[i] * r.y * (1.0 + acc.rint[i] / r.b0[i]);
    r.rel_err[i] = std::abs(s.v[i] - r.v_reconstructed[i]) / s.v[i];
    worst = std::max(worst, r.rel_err[i]);
  }
  r.max_rel_err = worst;
  return r;
}

struct BoundsReport {
  double inf_min_v = 0.0;
  double sup_max_v = 0.0;
  double inf_min_theta = 0.0;
  double sup_max_theta = 0.0;
  double sup_l1_v_neg_alpha = 0.0;
  double sup_e_paper_plus_vint = 0.0;
  bool bounded = false;
};

// Scans a stored time series for uniform bounds: positive floors and finite
// ceilings on v and theta (no vacuum, no concentration), a finite sup of
// Int v^{-alpha} dx, and a finite entropy + dissipation total.
inline BoundsReport bounds_monitor(const std::vector<DiagnosticsSample>& series) {
  if (series.empty()) throw DomainError("bounds_monitor: empty series");
  BoundsReport r;
  r.inf_min_v = std::numeric_limits<double>::infinity();
  r.inf_min_theta = std::numeric_limits<double>::infinity();
  r.sup_max_v = -std::numeric_limits<double>::infinity();
  r.sup_max_theta = -std::numeric_limits<double>::infinity();
  r.sup_l1_v_neg_alpha = -std::numeric_limits<double>::infinity();
  r.sup_e_paper_plus_vint = -std::numeric_limits<double>::infinity();
  for (const auto& d : series) {
    r.inf_min_v = std::min(r.inf_min_v, d.min_v);
    r.sup_max_v = std::max(r.sup_max_v, d.max_v);
    r.inf_min_theta = std::min(r.inf_min_theta, d.min_theta);
    r.sup_max_theta = std::max(r.sup_max_theta, d.max_theta);
    r.sup_l1_v_neg_alpha = std::max(r.sup_l1_v_neg_alpha, d.l1_v_neg_alpha);
    r.sup_e_paper_plus_vint =
        std::max(r.sup_e_paper_plus_vint, d.e_paper + d.vint);
  }
  auto finite = [](double x) { return std::isfinite(x); };
  r.bounded = r.inf_min_v > 0.0 && r.inf_min_theta > 0.0 &&
              finite(r.sup_max_v) && finite(r.sup_max_theta) &&
              finite(r.sup_l1_v_neg_alpha) && finite(r.sup_e_paper_plus_vint) &&
              finite(r.inf_min_v) && finite(r.inf_min_theta);
  return r;
}

} // namespace mhd1d
