#pragma once

#include <array>
#include <cstdint>

#include <Eigen/Dense>

#include "rydeit/blockade.hpp"

namespace rydeit {

/// kappa(0) assembled explicitly from its dyadic terms on the truncated
/// blockade space { |0,0>, (|1,n>, |0,n+1>) for n < kmax }. Positions:
/// |0,0> -> 0, |1,n> -> 1 + 2n, |0,n+1> -> 2 + 2n.
///
/// Independent of the v/w and p/q recursions: it only uses the 2x2
/// eigensystems, the raising coefficients and the energy denominators.
struct KappaOracle {
  std::int64_t kmax = 0;
  Eigen::MatrixXcd matrix;
  ModelParams params;

  static std::size_t upper_index(std::int64_t n) { return static_cast<std::size_t>(1 + 2 * n); }
  static std::size_t lower_index(std::int64_t n) { return static_cast<std::size_t>(2 + 2 * n); }

  /// kappa(0)^k |0,0>.
  Eigen::VectorXcd power_on_vacuum(std::int64_t k) const;

  /// Bilinear projections of kappa(0)^k |0,0> / sqrt(k!) onto |E_{k-1}^+->,
  /// i.e. the pair (v_k Z_{k-1}^+, w_k Z_{k-1}^-).
  std::array<Complex, 2> scaled_projections(std::int64_t k) const;
};

inline constexpr std::int64_t kMaxKappaOrder = 12;

/// Throws std::invalid_argument for kmax outside [1, 12] and SingularityError
/// for singular modes or vanishing denominators.
KappaOracle kappa0_oracle(const ModelParams& params, std::int64_t kmax);

}  // namespace rydeit
