#pragma once

#include <stdexcept>
#include <string>

namespace mhd1d {

// Argument outside the physical domain (nonpositive v, theta, ...).
class DomainError : public std::domain_error {
public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A field that must stay positive went nonpositive during a step.
// The offending step is discarded; values are never clipped.
class PositivityFailure : public std::runtime_error {
public:
  PositivityFailure(std::string field_name, int cell_index, double value)
      : std::runtime_error("positivity failure: " + field_name + "[" +
                           std::to_string(cell_index) +
                           "] = " + std::to_string(value)),
        field(std::move(field_name)), index(cell_index), offending(value) {}

  std::string field;
  int index;
  double offending;
};

// Tridiagonal elimination hit a pivot below 1e-14 of its row scale.
class SingularSystem : public std::runtime_error {
public:
  SingularSystem(int row, double pivot, double scale)
      : std::runtime_error("singular tridiagonal system at row " +
                           std::to_string(row) + " (pivot " +
                           std::to_string(pivot) + ", row scale " +
                           std::to_string(scale) + ")"),
        row(row), pivot(pivot), row_scale(scale) {}

  int row;
  double pivot;
  double row_scale;
};

// Positivity retries pushed dt below dt_min.
class DtUnderflow : public std::runtime_error {
public:
  DtUnderflow(double dt, double dt_min)
      : std::runtime_error("time step underflow: dt = " + std::to_string(dt) +
                           " fell below dt_min = " + std::to_string(dt_min) +
                           " during positivity retries"),
        dt(dt), dt_min(dt_min) {}

  double dt;
  double dt_min;
};

// Bad configuration file or invalid run configuration; names the field.
class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace mhd1d
