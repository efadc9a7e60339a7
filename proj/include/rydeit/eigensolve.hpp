#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rydeit/nhh.hpp"

namespace rydeit {

enum class EigenMethod { dense, shift_invert };

struct EigenPair {
  Complex value;
  VectorC vector;           ///< right eigenvector, unit l2 norm
  double residual = 0.0;    ///< ||H v - E v||_2
  bool degenerate = false;  ///< top two imaginary parts within 1e-9 max(1,|E|)
  EigenMethod method = EigenMethod::dense;
  int iterations = 0;       ///< inverse-iteration steps or Arnoldi restarts
};

struct EigenOptions {
  /// Dimensions above this use shift-and-invert Arnoldi.
  std::size_t dense_limit = 4000;
  /// Residual bound relative to ||H||_F.
  double relative_residual = 1e-10;
  int max_inverse_iterations = 25;

  // Shift-and-invert Arnoldi. The search window is the `nev` eigenvalues
  // closest to the shift; the least-decaying pair is picked among them.
  std::optional<Complex> shift;  ///< defaults to delta * M
  int nev = 6;
  int krylov_dim = 40;
  int max_restarts = 300;
};

/// Index of the eigenvalue with maximal imaginary part. Eigenvalues whose
/// imaginary part is within 1e-9 max(1, |E|) of the maximum count as tied;
/// the tie goes to the larger real part and sets `degenerate`.
struct Selection {
  std::size_t index = 0;
  bool degenerate = false;
};
Selection select_least_decaying(std::span<const Complex> values);

/// Full spectrum of a small or moderate matrix (LAPACK zgeev, no vectors).
std::vector<Complex> dense_eigenvalues(const SparseMatrixC& h);

/// Eigenvector for a known eigenvalue by inverse iteration on (H - sigma I),
/// followed by one Rayleigh-quotient correction. Throws ConvergenceError if
/// the residual bound is not met.
EigenPair inverse_iteration(const SparseMatrixC& h, Complex eigenvalue,
                            const EigenOptions& options = {});

/// Eigenpairs of H nearest `shift` via Arnoldi on (H - shift I)^{-1}.
/// Only pairs whose true residual meets the bound are returned; throws
/// ConvergenceError when none converge.
std::vector<EigenPair> shift_invert_arnoldi(const SparseMatrixC& h, Complex shift,
                                            const EigenOptions& options = {});

/// Least-decaying right eigenpair of the dressed Hamiltonian.
EigenPair least_decaying_eigenpair(const NhhMatrix& h, const EigenOptions& options = {});

std::string to_string(EigenMethod m);

}  // namespace rydeit
