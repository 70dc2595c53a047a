#pragma once

//=============================================================================
// Staggered discretization of the unit mass interval (0,1).
//
// Layout: v, theta, b1, b2 live at cell centers x_i = (i + 1/2) dx,
// u, w1, w2 live at nodes x_j = j dx. Every spatial operator of the system
// then lands on its natural site with adjacent-point stencils: (P+|b|^2/2)_x
// at nodes, u_x at centers, (mu u_x / v)_x back at nodes, and so on.
//
// Boundary conventions (u, b, w, theta_x all vanish on the boundary):
//   u, w : node values pinned to 0 at j = 0 and j = n.
//   b    : Dirichlet-0 through ghost cells, ghost = -(first interior value).
//   theta: zero flux through mirror ghosts, ghost = first interior value.
//=============================================================================

#include <cstddef>
#include <string>
#include <vector>

#include "mhd1d/errors.hpp"

namespace mhd1d {

struct Grid {
  int n_cells = 0;
  double dx = 0.0;

  explicit Grid(int n) : n_cells(n), dx(1.0 / n) {
    if (n < 4) throw DomainError("Grid: n_cells must be >= 4");
  }

  int n_nodes() const { return n_cells + 1; }
  double x_center(int i) const { return (i + 0.5) * dx; }
  double x_node(int j) const { return j * dx; }
};

// The seven discrete fields at one time level. Plain value type: copy it,
// hand it between threads, compare snapshots.
struct State {
  double t = 0.0;
  std::vector<double> v;     // specific volume, centers
  std::vector<double> theta; // temperature, centers
  std::vector<double> b1, b2; // transverse magnetic field, centers
  std::vector<double> u;      // longitudinal velocity, nodes
  std::vector<double> w1, w2; // transverse velocity, nodes

  State() = default;
  explicit State(const Grid& g)
      : v(g.n_cells, 1.0), theta(g.n_cells, 1.0), b1(g.n_cells, 0.0),
        b2(g.n_cells, 0.0), u(g.n_nodes(), 0.0), w1(g.n_nodes(), 0.0),
        w2(g.n_nodes(), 0.0) {}
};

enum class BoundaryClosure {
  dirichlet_zero_ghost, // ghost = -first interior value (field vanishes at wall)
  zero_flux            // ghost = first interior value (gradient vanishes at wall)
};

namespace detail {
inline void check_length(std::size_t got, std::size_t want, const char* who) {
  if (got != want)
    throw DomainError(std::string(who) + ": field length " +
                      std::to_string(got) + ", expected " +
                      std::to_string(want));
}
} // namespace detail

// d/dx of a node field, evaluated at cell centers. Exact for affine fields.
inline std::vector<double> ddx_node_to_center(const Grid& g,
                                              const std::vector<double>& f) {
  detail::check_length(f.size(), g.n_nodes(), "ddx_node_to_center");
  std::vector<double> out(g.n_cells);
  const double rdx = 1.0 / g.dx;
  for (int i = 0; i < g.n_cells; ++i) out[i] = (f[i + 1] - f[i]) * rdx;
  return out;
}

// d/dx of a center field, evaluated at nodes. Interior nodes use the compact
// two-point difference; boundary nodes use the requested ghost closure.
inline std::vector<double> ddx_center_to_node(const Grid& g,
                                              const std::vector<double>& f,
                                              BoundaryClosure left,
                                              BoundaryClosure right) {
  detail::check_length(f.size(), g.n_cells, "ddx_center_to_node");
  const int n = g.n_cells;
  std::vector<double> out(g.n_nodes());
  const double rdx = 1.0 / g.dx;
  for (int j = 1; j < n; ++j) out[j] = (f[j] - f[j - 1]) * rdx;
  out[0] = (left == BoundaryClosure::dirichlet_zero_ghost)
               ? 2.0 * f[0] * rdx
               : 0.0;
  out[n] = (right == BoundaryClosure::dirichlet_zero_ghost)
               ? -2.0 * f[n - 1] * rdx
               : 0.0;
  return out;
}

// Arithmetic mean of adjacent centers at interior nodes, one-sided copy at
// boundary nodes. Used to place v- and theta-dependent coefficients at the
// node sites of the diffusion operators.
inline std::vector<double> interp_center_to_node(const Grid& g,
                                                 const std::vector<double>& f) {
  detail::check_length(f.size(), g.n_cells, "interp_center_to_node");
  const int n = g.n_cells;
  std::vector<double> out(g.n_nodes());
  out[0] = f[0];
  out[n] = f[n - 1];
  for (int j = 1; j < n; ++j) out[j] = 0.5 * (f[j - 1] + f[j]);
  return out;
}

// Mean of the squares at the two nodes flanking each cell. Second-order
// placement of node quantities (u^2, gradients) into center quadratures.
inline std::vector<double> center_mean_of_node_squares(
    const Grid& g, const std::vector<double>& f) {
  detail::check_length(f.size(), g.n_nodes(), "center_mean_of_node_squares");
  std::vector<double> out(g.n_cells);
  for (int i = 0; i < g.n_cells; ++i)
    out[i] = 0.5 * (f[i] * f[i] + f[i + 1] * f[i + 1]);
  return out;
}

// Pin the node fields to their boundary values. Idempotent. The ghost
// conventions for b and theta are realized inside the difference operators,
// not stored in the state.
inline void apply_boundary(const Grid& g, State& s) {
  const int n = g.n_cells;
  detail::check_length(s.u.size(), g.n_nodes(), "apply_boundary");
  s.u[0] = s.u[n] = 0.0;
  s.w1[0] = s.w1[n] = 0.0;
  s.w2[0] = s.w2[n] = 0.0;
}

inline void check_state_shape(const Grid& g, const State& s) {
  detail::check_length(s.v.size(), g.n_cells, "State.v");
  detail::check_length(s.theta.size(), g.n_cells, "State.theta");
  detail::check_length(s.b1.size(), g.n_cells, "State.b1");
  detail::check_length(s.b2.size(), g.n_cells, "State.b2");
  detail::check_length(s.u.size(), g.n_nodes(), "State.u");
  detail::check_length(s.w1.size(), g.n_nodes(), "State.w1");
  detail::check_length(s.w2.size(), g.n_nodes(), "State.w2");
}

// v > 0 and theta > 0 are hard invariants of a valid state.
inline void check_state_positive(const State& s) {
  for (std::size_t i = 0; i < s.v.size(); ++i)
    if (!(s.v[i] > 0.0))
      throw DomainError("state: v[" + std::to_string(i) + "] = " +
                        std::to_string(s.v[i]) + " is not positive");
  for (std::size_t i = 0; i < s.theta.size(); ++i)
    if (!(s.theta[i] > 0.0))
      throw DomainError("state: theta[" + std::to_string(i) + "] = " +
                        std::to_string(s.theta[i]) + " is not positive");
}

} // namespace mhd1d
