#include "rydeit/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <string>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>

#include "rydeit/errors.hpp"

namespace rydeit {

namespace {

using SparseLU = Eigen::SparseLU<SparseMatrixC, Eigen::COLAMDOrdering<int>>;

SparseMatrixC shifted(const SparseMatrixC& h, Complex sigma) {
  SparseMatrixC id(h.rows(), h.cols());
  id.setIdentity();
  SparseMatrixC out = h - sigma * id;
  out.makeCompressed();
  return out;
}

void factorize(SparseLU& lu, const SparseMatrixC& a) {
  lu.analyzePattern(a);
  lu.factorize(a);
  if (lu.info() != Eigen::Success)
    throw ConvergenceError("sparse LU of shifted Hamiltonian failed: " + lu.lastErrorMessage(),
                           0, std::numeric_limits<double>::quiet_NaN());
}

double residual_of(const SparseMatrixC& h, const VectorC& v, Complex e) {
  return (h * v - e * v).norm();
}

// Picks the better of the current value and the Rayleigh quotient.
void rayleigh_correct(const SparseMatrixC& h, EigenPair& pair) {
  const VectorC hv = h * pair.vector;
  const Complex rq = pair.vector.dot(hv);  // conjugates the first argument
  const double r = (hv - rq * pair.vector).norm();
  if (r < pair.residual) {
    pair.value = rq;
    pair.residual = r;
  }
}

}  // namespace

std::string to_string(EigenMethod m) {
  return m == EigenMethod::dense ? "dense" : "shift_invert";
}

Selection select_least_decaying(std::span<const Complex> values) {
  if (values.empty()) throw std::invalid_argument("empty spectrum");
  std::size_t top = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i].imag() > values[top].imag()) top = i;

  // Near-ties in Im E are resolved by Re E so rounding noise cannot flip the
  // choice between runs.
  const double tol = 1e-9 * std::max(1.0, std::abs(values[top]));
  Selection sel{top, false};
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i == top || values[top].imag() - values[i].imag() >= tol) continue;
    sel.degenerate = true;
    if (values[i].real() > values[sel.index].real()) sel.index = i;
  }
  return sel;
}

std::vector<Complex> dense_eigenvalues(const SparseMatrixC& h) {
  const lapack_int n = static_cast<lapack_int>(h.rows());
  std::vector<Complex> a(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int col = 0; col < h.outerSize(); ++col)
    for (SparseMatrixC::InnerIterator it(h, col); it; ++it)
      a[static_cast<std::size_t>(it.col()) * n + it.row()] = it.value();
  std::vector<Complex> w(static_cast<std::size_t>(n));
  const lapack_int info = LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', n, a.data(), n,
                                        w.data(), nullptr, 1, nullptr, 1);
  if (info != 0)
    throw ConvergenceError("zgeev failed with info=" + std::to_string(info), 0,
                           std::numeric_limits<double>::quiet_NaN());
  return w;
}

EigenPair inverse_iteration(const SparseMatrixC& h, Complex eigenvalue,
                            const EigenOptions& options) {
  const double scale = std::max(1.0, h.norm());
  const double tol = options.relative_residual * scale;
  // Offset keeps H - sigma I invertible when the eigenvalue is exact.
  const Complex sigma = eigenvalue + Complex{1e-11, 1e-11} * scale;

  SparseLU lu;
  factorize(lu, shifted(h, sigma));

  const auto n = h.rows();
  VectorC v = VectorC::Ones(n) / std::sqrt(static_cast<double>(n));
  EigenPair pair{eigenvalue, v, residual_of(h, v, eigenvalue)};
  double previous = std::numeric_limits<double>::infinity();
  for (int it = 1; it <= options.max_inverse_iterations; ++it) {
    VectorC next = lu.solve(v);
    const double nrm = next.norm();
    if (!std::isfinite(nrm) || nrm == 0.0) break;
    v = next / nrm;
    pair.vector = v;
    pair.residual = residual_of(h, v, eigenvalue);
    pair.iterations = it;
    if (pair.residual <= tol && pair.residual >= 0.5 * previous) break;
    previous = std::min(previous, pair.residual);
  }
  rayleigh_correct(h, pair);
  if (!(pair.residual <= tol))
    throw ConvergenceError("inverse iteration did not reach residual bound", pair.iterations,
                           pair.residual);
  return pair;
}

std::vector<EigenPair> shift_invert_arnoldi(const SparseMatrixC& h, Complex shift,
                                            const EigenOptions& options) {
  const auto n = static_cast<int>(h.rows());
  const int m = std::min(options.krylov_dim, n);
  const int nev = std::min(options.nev, m);
  const double tol = options.relative_residual * std::max(1.0, h.norm());

  SparseLU lu;
  factorize(lu, shifted(h, shift));

  Eigen::MatrixXcd basis(n, m + 1);
  Eigen::MatrixXcd hess = Eigen::MatrixXcd::Zero(m + 1, m);
  VectorC start = VectorC::Ones(n);
  double best_residual = std::numeric_limits<double>::infinity();

  for (int restart = 1; restart <= options.max_restarts; ++restart) {
    basis.col(0) = start.normalized();
    hess.setZero();
    int built = m;
    for (int j = 0; j < m; ++j) {
      VectorC w = lu.solve(basis.col(j));
      // Gram-Schmidt, twice.
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i <= j; ++i) {
          const Complex c = basis.col(i).dot(w);
          hess(i, j) += c;
          w -= c * basis.col(i);
        }
      }
      const double beta = w.norm();
      hess(j + 1, j) = beta;
      if (beta < 1e-14 * hess.col(j).norm()) {
        built = j + 1;
        break;
      }
      basis.col(j + 1) = w / beta;
    }

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ritz(hess.topLeftCorner(built, built));
    const VectorC mu = ritz.eigenvalues();
    std::vector<int> order(static_cast<std::size_t>(built));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return std::abs(mu[a]) > std::abs(mu[b]); });

    std::vector<EigenPair> pairs;
    std::vector<EigenPair> converged;
    const int want = std::min(nev, built);
    for (int r = 0; r < want; ++r) {
      const int idx = order[static_cast<std::size_t>(r)];
      if (std::abs(mu[idx]) == 0.0) continue;
      EigenPair p;
      p.value = shift + 1.0 / mu[idx];
      p.vector = (basis.leftCols(built) * ritz.eigenvectors().col(idx)).normalized();
      p.residual = residual_of(h, p.vector, p.value);
      p.method = EigenMethod::shift_invert;
      p.iterations = restart;
      rayleigh_correct(h, p);
      best_residual = std::min(best_residual, p.residual);
      if (p.residual <= tol) converged.push_back(p);
      pairs.push_back(std::move(p));
    }
    if (static_cast<int>(converged.size()) == want || (built < m && !converged.empty()))
      return converged;

    start.setZero();
    for (const auto& p : pairs) start += p.vector;
    if (start.norm() == 0.0) start = VectorC::Random(n);
  }
  throw ConvergenceError("shift-invert Arnoldi did not converge within " +
                             std::to_string(options.max_restarts) + " restarts",
                         options.max_restarts, best_residual);
}

EigenPair least_decaying_eigenpair(const NhhMatrix& h, const EigenOptions& options) {
  if (h.dimension() == 0) throw std::invalid_argument("empty Hamiltonian");

  if (h.dimension() <= options.dense_limit) {
    const auto values = dense_eigenvalues(h.entries);
    const Selection sel = select_least_decaying(values);
    EigenPair pair = inverse_iteration(h.entries, values[sel.index], options);
    pair.degenerate = sel.degenerate;
    pair.method = EigenMethod::dense;
    return pair;
  }

  // Default shift: the unperturbed ground-band energy delta * M, which is the
  // diagonal entry of |M,0,0> (basis position 0).
  const Complex shift =
      options.shift.value_or(Complex{h.entries.coeff(0, 0).real(), 0.0});
  auto pairs = shift_invert_arnoldi(h.entries, shift, options);
  std::vector<Complex> values;
  values.reserve(pairs.size());
  for (const auto& p : pairs) values.push_back(p.value);
  const Selection sel = select_least_decaying(values);
  EigenPair pair = inverse_iteration(h.entries, pairs[sel.index].value, options);
  pair.degenerate = sel.degenerate;
  pair.method = EigenMethod::shift_invert;
  pair.iterations = pairs[sel.index].iterations;
  return pair;
}

}  // namespace rydeit
