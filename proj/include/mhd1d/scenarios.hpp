#pragma once

//=============================================================================
// Built-in initial-data presets. Every preset is smooth, positive where
// required, boundary-compatible (u0, w0, b0 vanish at the walls and theta0
// has zero wall gradient), and has its specific volume renormalized to unit
// total mass after sampling.
//=============================================================================

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "mhd1d/errors.hpp"
#include "mhd1d/functionals.hpp"
#include "mhd1d/grid.hpp"

namespace mhd1d {

struct Scenario {
  std::string name;
  std::string description;
  std::function<double(double)> v0, theta0, u0, w10, w20, b10, b20;
};

namespace detail {
// Deterministic uniform draws in [-1, 1] from split bits of a 64-bit
// generator; keeps the random preset reproducible across platforms.
class SeededUniform {
public:
  explicit SeededUniform(std::uint64_t seed) : state_(seed + 0x9E3779B97F4A7C15ull) {}
  double next() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    const double u = static_cast<double>(z >> 11) * 0x1.0p-53; // [0,1)
    return 2.0 * u - 1.0;
  }

private:
  std::uint64_t state_;
};
} // namespace detail

inline std::vector<Scenario> builtin_scenarios(std::uint64_t seed = 0) {
  std::vector<Scenario> out;

  {
    Scenario s;
    s.name = "rest";
    s.description = "uniform rest state v = theta = 1, u = w = b = 0";
    s.v0 = [](double) { return 1.0; };
    s.theta0 = [](double) { return 1.0; };
    s.u0 = [](double) { return 0.0; };
    s.w10 = s.w20 = s.u0;
    s.b10 = s.b20 = s.u0;
    out.push_back(s);
  }
  {
    Scenario s;
    s.name = "ns-limit";
    s.description =
        "b = w = 0 Navier-Stokes reduction with smooth v, u, theta data";
    s.v0 = [](double x) { return 1.0 + 0.3 * std::sin(2.0 * M_PI * x); };
    s.theta0 = [](double x) { return 1.0 + 0.25 * std::cos(M_PI * x); };
    s.u0 = [](double x) { return 0.5 * std::sin(M_PI * x); };
    s.w10 = [](double) { return 0.0; };
    s.w20 = s.w10;
    s.b10 = s.w10;
    s.b20 = s.w10;
    out.push_back(s);
  }
  {
    Scenario s;
    s.name = "large-oscillation";
    s.description = "large-amplitude oscillations in every field";
    s.v0 = [](double x) { return 1.0 + 0.5 * std::sin(2.0 * M_PI * x); };
    s.theta0 = [](double x) {
      const double c = std::cos(M_PI * x);
      return 1.0 + 0.5 * c * c;
    };
    s.u0 = [](double x) { return std::sin(M_PI * x); };
    s.w10 = [](double x) { return 0.3 * std::sin(2.0 * M_PI * x); };
    s.w20 = [](double x) { return 0.3 * std::sin(M_PI * x); };
    s.b10 = [](double x) { return 0.5 * std::sin(M_PI * x); };
    s.b20 = [](double x) { return 0.5 * std::sin(2.0 * M_PI * x); };
    out.push_back(s);
  }
  {
    Scenario s;
    s.name = "magnetic-shear";
    s.description = "strong transverse-field gradients over a quiescent gas";
    s.v0 = [](double) { return 1.0; };
    s.theta0 = [](double) { return 1.0; };
    s.u0 = [](double) { return 0.0; };
    s.w10 = s.u0;
    s.w20 = s.u0;
    s.b10 = [](double x) { return 1.5 * std::sin(2.0 * M_PI * x); };
    s.b20 = [](double x) { return -1.0 * std::sin(3.0 * M_PI * x); };
    out.push_back(s);
  }
  {
    // Smooth low-mode Fourier perturbations with seeded coefficients.
    detail::SeededUniform rng(seed);
    std::vector<double> cv(4), ct(4), cu(4), cw1(4), cw2(4), cb1(4), cb2(4);
    for (int k = 0; k < 4; ++k) {
      cv[k] = rng.next();
      ct[k] = rng.next();
      cu[k] = rng.next();
      cw1[k] = rng.next();
      cw2[k] = rng.next();
      cb1[k] = rng.next();
      cb2[k] = rng.next();
    }
    auto sine_sum = [](std::vector<double> c, double amp) {
      return [c, amp](double x) {
        double s = 0.0;
        for (int k = 0; k < 4; ++k)
          s += c[k] * std::sin((k + 1) * M_PI * x) / (k + 1);
        return amp * s;
      };
    };
    Scenario s;
    s.name = "random-perturbation";
    s.description =
        "seeded smooth random low-mode perturbation of the rest state";
    s.v0 = [cv](double x) {
      double p = 0.0;
      for (int k = 0; k < 4; ++k)
        p += cv[k] * std::sin(2.0 * (k + 1) * M_PI * x) / (k + 1);
      return 1.0 + 0.25 * p;
    };
    s.theta0 = [ct](double x) {
      double p = 0.0;
      for (int k = 0; k < 4; ++k)
        p += ct[k] * std::cos((k + 1) * M_PI * x) / (k + 1);
      return 1.0 + 0.2 * p;
    };
    s.u0 = sine_sum(cu, 0.3);
    s.w10 = sine_sum(cw1, 0.2);
    s.w20 = sine_sum(cw2, 0.2);
    s.b10 = sine_sum(cb1, 0.25);
    s.b20 = sine_sum(cb2, 0.25);
    out.push_back(s);
  }
  return out;
}

inline const Scenario* find_scenario(const std::vector<Scenario>& list,
                                     const std::string& name) {
  for (const auto& s : list)
    if (s.name == name) return &s;
  return nullptr;
}

// Sample a preset onto the staggered grid, check the initial-data
// invariants, and renormalize v0 to unit total mass.
inline State sample_scenario(const Grid& g, const Scenario& sc) {
  State s(g);
  for (int i = 0; i < g.n_cells; ++i) {
    const double x = g.x_center(i);
    s.v[i] = sc.v0(x);
    s.theta[i] = sc.theta0(x);
    s.b1[i] = sc.b10(x);
    s.b2[i] = sc.b20(x);
  }
  for (int j = 0; j <= g.n_cells; ++j) {
    const double x = g.x_node(j);
    s.u[j] = sc.u0(x);
    s.w1[j] = sc.w10(x);
    s.w2[j] = sc.w20(x);
  }
  for (int i = 0; i < g.n_cells; ++i) {
    if (!(s.v[i] > 0.0))
      throw DomainError("scenario '" + sc.name +
                        "': v0 must be positive everywhere (inf v0 > 0)");
    if (!(s.theta[i] > 0.0))
      throw DomainError("scenario '" + sc.name +
                        "': theta0 must be positive everywhere (inf theta0 > 0)");
  }
  apply_boundary(g, s);

  const double m = mass(g, s);
  for (double& vi : s.v) vi /= m;
  return s;
}

} // namespace mhd1d
