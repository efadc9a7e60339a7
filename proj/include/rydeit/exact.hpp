#pragma once

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "rydeit/eigensolve.hpp"
#include "rydeit/nhh.hpp"

namespace rydeit {

/// How <O> is formed from the eigenvector. right_right is the default;
/// biorthogonal pairs the left eigenvector (v^T for a complex-symmetric H)
/// with the right one and is kept as a diagnostic only.
enum class Expectation { right_right, biorthogonal };

/// <psi|(a_g^dag a_e)^n|psi> / m^n on a unit-norm state.
Complex susceptibility(const VectorC& state, const FockBasis& basis, int order,
                       std::int64_t m, Expectation mode = Expectation::right_right);

struct ExactOptions {
  BuildOptions build;
  EigenOptions eigen;
  Expectation expectation = Expectation::right_right;
  std::optional<int> jobs;
};

/// One point of the exact pipeline build -> least-decaying pair -> chi.
struct ExactPoint {
  double value = 0.0;  ///< swept-axis value
  Complex chi1{std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
  Complex chi2 = chi1;
  Complex eigenvalue = chi1;
  double residual = std::numeric_limits<double>::quiet_NaN();
  bool degenerate = false;
  bool ok = false;
  std::string error;  ///< set when !ok
};

/// Evaluates one parameter set; never throws for solver failures.
ExactPoint exact_point(const ModelParams& params, const ExactOptions& options = {});

/// axis in {delta, u, m}. Rows follow grid order; failed points carry NaN
/// payload and an error string.
std::vector<ExactPoint> exact_profile(const ModelParams& params, const std::string& axis,
                                      const std::vector<double>& grid,
                                      const ExactOptions& options = {});

}  // namespace rydeit
