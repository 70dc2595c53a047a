#pragma once

//=============================================================================
// Physical parameters and pointwise constitutive laws for planar compressible
// MHD of a perfect gas in Lagrangian mass coordinates:
//
//   P(v,theta)   = R theta / v
//   e(theta)     = c_v theta + e_const
//   mu(v)        = mu1 + mu2 v^{-alpha}      (volume-dependent viscosity)
//   kappa(theta) = kappa0 theta^beta         (degenerate heat conductivity)
//
// All functions are pure and throw DomainError outside their domain.
//=============================================================================

#include <cmath>
#include <string>

#include "mhd1d/errors.hpp"

namespace mhd1d {

struct Parameters {
  double R = 1.0;        // specific gas constant
  double c_v = 1.0;      // heat capacity at constant volume
  double lambda_w = 1.0; // transverse-velocity viscosity
  double nu_b = 1.0;     // magnetic diffusivity
  double mu1 = 1.0;      // constant part of mu(v)
  double mu2 = 0.0;      // coefficient of v^{-alpha} in mu(v)
  double alpha = 0.0;    // viscosity exponent
  double beta = 1.0;     // conductivity exponent
  double kappa0 = 1.0;   // conductivity prefactor
  double e_const = 0.0;  // additive constant in e(theta)

  // Normalized constants: lambda = nu = mu1 = kappa0 = R = c_v = 1 and
  // mu2 = alpha, the regime every built-in study runs in.
  static Parameters paper_normalized(double alpha, double beta) {
    Parameters p;
    p.alpha = alpha;
    p.beta = beta;
    p.mu2 = alpha;
    p.validate();
    return p;
  }

  void validate() const {
    auto require = [](bool ok, const std::string& what) {
      if (!ok) throw DomainError("Parameters: " + what);
    };
    require(R > 0.0, "R must be > 0");
    require(c_v > 0.0, "c_v must be > 0");
    require(lambda_w > 0.0, "lambda_w must be > 0");
    require(nu_b > 0.0, "nu_b must be > 0");
    require(mu1 > 0.0, "mu1 must be > 0");
    require(mu2 >= 0.0, "mu2 must be >= 0");
    require(alpha >= 0.0, "alpha must be >= 0");
    require(beta >= 0.0, "beta must be >= 0");
    require(kappa0 > 0.0, "kappa0 must be > 0");
  }

  // Adiabatic exponent of the perfect gas, used by the CFL estimate.
  double gamma() const { return 1.0 + R / c_v; }
};

inline double pressure(double v, double theta, const Parameters& p) {
  if (!(v > 0.0)) throw DomainError("pressure: v must be > 0");
  if (!(theta > 0.0)) throw DomainError("pressure: theta must be > 0");
  return p.R * theta / v;
}

inline double viscosity(double v, const Parameters& p) {
  if (!(v > 0.0)) throw DomainError("viscosity: v must be > 0");
  return p.mu1 + p.mu2 * std::pow(v, -p.alpha);
}

inline double conductivity(double theta, const Parameters& p) {
  if (!(theta > 0.0)) throw DomainError("conductivity: theta must be > 0");
  return p.kappa0 * std::pow(theta, p.beta);
}

inline double internal_energy(double theta, const Parameters& p) {
  if (!(theta > 0.0)) throw DomainError("internal_energy: theta must be > 0");
  return p.c_v * theta + p.e_const;
}

// f_alpha(s) = alpha s^{1-alpha}/(1-alpha) for alpha != 1, ln s for alpha = 1.
// The alpha = 1 branch is selected by exact comparison; callers wanting the
// limit behavior must pass alpha = 1 exactly.
inline double f_alpha(double s, double alpha) {
  if (!(s > 0.0)) throw DomainError("f_alpha: s must be > 0");
  if (alpha == 1.0) return std::log(s);
  return alpha / (1.0 - alpha) * std::pow(s, 1.0 - alpha);
}

} // namespace mhd1d
