#pragma once

#include <cstddef>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "rydeit/fock.hpp"

namespace rydeit {

using SparseMatrixC = Eigen::SparseMatrix<Complex>;
using VectorC = Eigen::VectorXcd;

/// Dressed non-Hermitian Hamiltonian on a fixed-M Fock basis. Complex
/// symmetric: couplings are real and symmetric, decay sits on the diagonal.
struct NhhMatrix {
  FockBasis basis;
  SparseMatrixC entries;

  std::size_t dimension() const { return basis.size(); }
  double frobenius_norm() const { return entries.norm(); }
};

struct BuildOptions {
  /// (M+2)(M+1)/2 for M = 150.
  std::size_t max_dimension = 11476;
};

/// Throws DimensionError above the cap and std::invalid_argument for invalid
/// parameters.
NhhMatrix build_nhh(const ModelParams& params, const BuildOptions& options = {});

/// Sparse matrix of a_to^dag a_from on the basis.
SparseMatrixC transition_operator(const FockBasis& basis, Band from, Band to);

}  // namespace rydeit
