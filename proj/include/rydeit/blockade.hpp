#pragma once

// Blockade-regime machinery: at most one particle in the interaction band, so
// the R/e dynamics reduces to a Jaynes-Cummings-like problem with 2x2 blocks
// coupling |1,n> and |0,n+1> (first integer: R occupation, second: e
// occupation). The stationary state is built perturbatively in omega_p from a
// two-component recursion over the number of excitations k.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "rydeit/fock.hpp"
#include "rydeit/params.hpp"

namespace rydeit {

/// Principal square root with Re >= 0, and Im >= 0 when the result is purely
/// imaginary (so sqrt(-x) = +i sqrt(x) regardless of the sign of zero).
Complex principal_sqrt(Complex z);

/// |sin theta_n| below this marks a (removable) singular mode.
inline constexpr double kSingularModeThreshold = 1e-8;

struct ModePair {
  std::int64_t n = 0;
  Complex cos_theta;
  Complex sin_theta;  ///< principal sqrt(1 - cos^2)
  Complex exp_plus;   ///< e^{+i theta} = cos + i sin
  Complex exp_minus;  ///< e^{-i theta} = cos - i sin
  Complex e_plus;     ///< -i (Gamma_e n + Gamma_R + Omega_c sqrt(n+1) e^{+i theta})
  Complex e_minus;
  Complex z_plus;     ///< sqrt(1 - e^{+2i theta})
  Complex z_minus;
  bool near_singular = false;
};

ModePair mode_pair(std::int64_t n, const ModelParams& params);

/// cos^2 and sin^2 of theta_n without square roots.
Complex cos_theta(std::int64_t n, const ModelParams& params);
Complex sin_theta_squared(std::int64_t n, const ModelParams& params);

/// Explicit 2x2 block of the blockade Hamiltonian on (|1,n>, |0,n+1>).
using Block2 = std::array<std::array<Complex, 2>, 2>;
Block2 jc_block(std::int64_t n, const ModelParams& params);

/// Coefficients on the ordered pair (|1,n>, |0,n+1>).
struct DressedVector {
  Complex upper;
  Complex lower;
};

/// Unconjugated pairing; left and right eigenvectors coincide component-wise.
Complex bilinear(const DressedVector& a, const DressedVector& b);

struct JcEigensystem {
  std::int64_t n = 0;
  Complex e_plus, e_minus;
  DressedVector right_plus, right_minus;
  DressedVector left_plus, left_minus;
};

/// Throws SingularityError on a near-singular mode.
JcEigensystem jc_eigensystem(std::int64_t n, const ModelParams& params);

/// a_e^dag |E_n^+> = c+ |E_{n+1}^+> + c- |E_{n+1}^->
/// a_e^dag |E_n^-> = d+ |E_{n+1}^+> + d- |E_{n+1}^->
struct RaisingCoefficients {
  Complex c_plus, c_minus, d_plus, d_minus;
};

/// Coefficients for mode n -> n+1, by bilinear projection.
RaisingCoefficients raising_coefficients(std::int64_t n, const ModelParams& params);

/// a_e^dag |0,0> = c0+ |E_0^+> + c0- |E_0^->.
std::array<Complex, 2> vacuum_raising_coefficients(const ModelParams& params);

struct VwStep {
  std::int64_t k = 0;
  Complex v, w;
};

/// Raw v/w recursion, k = 1..m. Cross-validation only: limited to m <= 100
/// and fails on singular modes or vanishing denominators.
std::vector<VwStep> vw_recursion(const ModelParams& params, std::int64_t m);

inline constexpr std::int64_t kMaxVwDepth = 100;

/// Stabilised recursion value (p, q) * exp(log_scale). The mantissa is
/// renormalised every step so max(|p|, |q|) = 1 (or both are zero).
struct PqStep {
  std::int64_t k = 0;
  Complex p, q;
  double log_scale = 0.0;

  Complex p_value() const { return p * std::exp(log_scale); }
  Complex q_value() const { return q * std::exp(log_scale); }
};

/// p/q recursion, k = 1..m. Throws SingularityError when F_k vanishes or the
/// initial denominator is zero.
std::vector<PqStep> pq_recursion(const ModelParams& params, std::int64_t m);

/// Amplitudes over |M,0,0>, |M-k,1,k-1> and |M-k,0,k>, k = 1..M.
struct BlockadeState {
  std::int64_t m = 0;
  Complex amp0;
  std::vector<Complex> amps_r;  ///< index k-1
  std::vector<Complex> amps_e;  ///< index k-1
  bool normalized = false;

  double norm_squared() const;
};

BlockadeState assemble_state(const ModelParams& params, std::int64_t m);

/// Same, from a precomputed recursion. Only the first m steps are used; the
/// recursion does not depend on m so one table serves a scan over M.
BlockadeState assemble_state(const ModelParams& params, std::int64_t m,
                             std::span<const PqStep> steps);

/// Embeds the state into the canonical basis of the exact path.
std::vector<Complex> to_fock_amplitudes(const BlockadeState& state, const FockBasis& basis);

/// <(a_g^dag a_e)^order> / M^order on a normalised state.
Complex blockade_susceptibility(const BlockadeState& state, int order);
Complex blockade_susceptibility(const ModelParams& params, int order);

/// Single-particle closed form.
Complex chi_single(const ModelParams& params);

struct ChiLimits {
  Complex first;   ///< chi^(1)
  Complex second;  ///< chi^(2) = (chi^(1))^2
};

/// Large-M closed form from the asymptotic recursion matrix.
ChiLimits chi_infinite(const ModelParams& params);

}  // namespace rydeit
