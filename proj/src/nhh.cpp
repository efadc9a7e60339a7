#include "rydeit/nhh.hpp"

#include <string>
#include <vector>

#include "rydeit/errors.hpp"

namespace rydeit {

namespace {

using Triplet = Eigen::Triplet<Complex>;

void add_symmetric_hops(const FockBasis& basis, Band a, Band b, double coupling,
                        std::vector<Triplet>& out) {
  if (coupling == 0.0) return;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto hop = hopping_amplitude(basis[i], a, b);
    if (!hop) continue;
    const auto j = *basis.index(hop->dst);
    const Complex v{-coupling * hop->amplitude, 0.0};
    out.emplace_back(static_cast<int>(j), static_cast<int>(i), v);
    out.emplace_back(static_cast<int>(i), static_cast<int>(j), v);
  }
}

}  // namespace

NhhMatrix build_nhh(const ModelParams& params, const BuildOptions& options) {
  validate(params, SolverPath::exact);
  const std::size_t dim = FockBasis::dimension(params.m);
  if (dim > options.max_dimension)
    throw DimensionError("Hilbert-space dimension " + std::to_string(dim) +
                         " exceeds cap " + std::to_string(options.max_dimension));

  FockBasis basis(params.m);
  std::vector<Triplet> triplets;
  triplets.reserve(5 * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const int ii = static_cast<int>(i);
    triplets.emplace_back(ii, ii, diagonal_energy(basis[i], params));
  }
  // Each unordered pair is visited once from the e-side and mirrored.
  add_symmetric_hops(basis, Band::excited, Band::rydberg, params.omega_c, triplets);
  add_symmetric_hops(basis, Band::excited, Band::ground, params.omega_p, triplets);

  SparseMatrixC h(static_cast<int>(dim), static_cast<int>(dim));
  h.setFromTriplets(triplets.begin(), triplets.end());
  h.makeCompressed();
  return NhhMatrix{std::move(basis), std::move(h)};
}

SparseMatrixC transition_operator(const FockBasis& basis, Band from, Band to) {
  std::vector<Triplet> triplets;
  triplets.reserve(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto hop = hopping_amplitude(basis[i], from, to);
    if (!hop) continue;
    triplets.emplace_back(static_cast<int>(*basis.index(hop->dst)),
                          static_cast<int>(i), Complex{hop->amplitude, 0.0});
  }
  const int n = static_cast<int>(basis.size());
  SparseMatrixC op(n, n);
  op.setFromTriplets(triplets.begin(), triplets.end());
  op.makeCompressed();
  return op;
}

}  // namespace rydeit
