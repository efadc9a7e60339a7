#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rydeit {

/// A blockade mode, recursion matrix or denominator that is (numerically)
/// singular. `step` names the mode index n or recursion step k involved.
class SingularityError : public std::runtime_error {
 public:
  SingularityError(const std::string& what, std::int64_t step)
      : std::runtime_error(what), step_(step) {}
  std::int64_t step() const noexcept { return step_; }

 private:
  std::int64_t step_;
};

/// Iterative eigensolver failed to meet its convergence contract.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, int iterations, double residual)
      : std::runtime_error(what), iterations_(iterations), residual_(residual) {}
  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

/// Hilbert-space dimension above the configured cap.
class DimensionError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace rydeit
