#pragma once

// Thomas elimination for the tridiagonal systems of the semi-implicit sweep.
// No pivoting: every system assembled by the integrator is strictly
// diagonally dominant. A pivot below 1e-14 of its row scale aborts.

#include <cmath>
#include <vector>

#include "mhd1d/errors.hpp"

namespace mhd1d {

// Solves lower[i]*x[i-1] + diag[i]*x[i] + upper[i]*x[i+1] = rhs[i].
// lower[0] and upper[m-1] are ignored. Overwrites rhs with the solution.
inline void solve_tridiagonal(const std::vector<double>& lower,
                              std::vector<double> diag,
                              const std::vector<double>& upper,
                              std::vector<double>& rhs) {
  const int m = static_cast<int>(diag.size());
  constexpr double kPivotFloor = 1e-14;

  auto check_pivot = [&](int row) {
    const double scale = std::abs(diag[row]) +
                         (row > 0 ? std::abs(lower[row]) : 0.0) +
                         (row + 1 < m ? std::abs(upper[row]) : 0.0);
    if (std::abs(diag[row]) < kPivotFloor * scale || diag[row] == 0.0)
      throw SingularSystem(row, diag[row], scale);
  };

  check_pivot(0);
  for (int i = 1; i < m; ++i) {
    const double mfac = lower[i] / diag[i - 1];
    diag[i] -= mfac * upper[i - 1];
    rhs[i] -= mfac * rhs[i - 1];
    check_pivot(i);
  }
  rhs[m - 1] /= diag[m - 1];
  for (int i = m - 2; i >= 0; --i)
    rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

} // namespace mhd1d
