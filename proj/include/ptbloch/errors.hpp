#pragma once

#include <stdexcept>
#include <string>

namespace ptbloch {

// Invalid problem definition or run configuration (bad n, bad K, bad grid, ...).
struct config_error : std::runtime_error {
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Requested magnitudes exceed the double-precision budget of the formulas.
struct precision_error : std::runtime_error {
  explicit precision_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numerical failure at run time (eigensolver non-convergence, bad residual).
struct numeric_error : std::runtime_error {
  explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ptbloch
