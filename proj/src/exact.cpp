#include "rydeit/exact.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "rydeit/parallel.hpp"

namespace rydeit {

int resolve_jobs(std::optional<int> requested) {
  if (requested && *requested > 0) return *requested;
  if (const char* env = std::getenv("RYDEIT_JOBS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<int>(v);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

Complex susceptibility(const VectorC& state, const FockBasis& basis, int order,
                       std::int64_t m, Expectation mode) {
  if (order < 1) throw std::invalid_argument("susceptibility order must be >= 1");
  if (m < 1) throw std::invalid_argument("particle number must be >= 1");
  if (static_cast<std::size_t>(state.size()) != basis.size())
    throw std::invalid_argument("state dimension does not match basis");

  const SparseMatrixC lower = transition_operator(basis, Band::excited, Band::ground);
  VectorC applied = state;
  for (int k = 0; k < order; ++k) applied = lower * applied;

  Complex num;
  if (mode == Expectation::right_right) {
    num = state.dot(applied);
  } else {
    const Complex norm = state.transpose() * state;
    num = Complex(state.transpose() * applied) / norm;
  }
  return num / std::pow(static_cast<double>(m), order);
}

ExactPoint exact_point(const ModelParams& params, const ExactOptions& options) {
  ExactPoint pt;
  try {
    const NhhMatrix h = build_nhh(params, options.build);
    const EigenPair pair = least_decaying_eigenpair(h, options.eigen);
    pt.eigenvalue = pair.value;
    pt.residual = pair.residual;
    pt.degenerate = pair.degenerate;
    pt.chi1 = susceptibility(pair.vector, h.basis, 1, params.m, options.expectation);
    pt.chi2 = susceptibility(pair.vector, h.basis, 2, params.m, options.expectation);
    pt.ok = true;
  } catch (const std::exception& e) {
    pt.error = e.what();
  }
  return pt;
}

std::vector<ExactPoint> exact_profile(const ModelParams& params, const std::string& axis,
                                      const std::vector<double>& grid,
                                      const ExactOptions& options) {
  if (axis != "delta" && axis != "u" && axis != "m")
    throw std::invalid_argument("exact profile axis must be delta, u or m; got '" + axis + "'");
  if (grid.empty()) throw std::invalid_argument("empty grid");

  std::vector<ExactPoint> rows(grid.size());
  parallel_for_indexed(grid.size(), resolve_jobs(options.jobs), [&](std::size_t i) {
    rows[i] = exact_point(with_param(params, axis, grid[i]), options);
    rows[i].value = grid[i];
  });
  return rows;
}

}  // namespace rydeit
