#include "rydeit/kappa.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "rydeit/errors.hpp"

namespace rydeit {

namespace {

Eigen::VectorXcd embed(const DressedVector& x, std::int64_t n, Eigen::Index dim) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
  v[static_cast<Eigen::Index>(KappaOracle::upper_index(n))] = x.upper;
  v[static_cast<Eigen::Index>(KappaOracle::lower_index(n))] = x.lower;
  return v;
}

Complex energy_gap(Complex gap, std::int64_t n) {
  if (std::abs(gap) <= 1e-10)
    throw SingularityError("kappa(0) denominator vanishes at mode " + std::to_string(n), n);
  return gap;
}

}  // namespace

KappaOracle kappa0_oracle(const ModelParams& params, std::int64_t kmax) {
  if (kmax < 1 || kmax > kMaxKappaOrder)
    throw std::invalid_argument("kappa0_oracle supports 1 <= kmax <= 12");
  validate(params, SolverPath::blockade);

  const auto dim = static_cast<Eigen::Index>(1 + 2 * kmax);
  std::vector<JcEigensystem> sys;
  for (std::int64_t n = 0; n < kmax; ++n) sys.push_back(jc_eigensystem(n, params));

  KappaOracle oracle;
  oracle.kmax = kmax;
  oracle.params = params;
  oracle.matrix = Eigen::MatrixXcd::Zero(dim, dim);
  const double delta = params.delta;

  // |0,0> -> mode 0
  const auto c0 = vacuum_raising_coefficients(params);
  Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(dim);
  vac[0] = 1.0;
  oracle.matrix += c0[0] * embed(sys[0].right_plus, 0, dim) * vac.transpose() /
                   energy_gap(sys[0].e_plus - delta, 0);
  oracle.matrix += c0[1] * embed(sys[0].right_minus, 0, dim) * vac.transpose() /
                   energy_gap(sys[0].e_minus - delta, 0);

  // mode n -> mode n+1; bras are the bilinear left vectors.
  for (std::int64_t n = 0; n + 1 < kmax; ++n) {
    const auto& from = sys[static_cast<std::size_t>(n)];
    const auto& to = sys[static_cast<std::size_t>(n + 1)];
    const RaisingCoefficients rc = raising_coefficients(n, params);
    const Eigen::VectorXcd bra_p = embed(from.left_plus, n, dim);
    const Eigen::VectorXcd bra_m = embed(from.left_minus, n, dim);
    const Eigen::VectorXcd ket_p = embed(to.right_plus, n + 1, dim);
    const Eigen::VectorXcd ket_m = embed(to.right_minus, n + 1, dim);
    oracle.matrix += rc.c_plus * ket_p * bra_p.transpose() /
                     energy_gap(to.e_plus - from.e_plus - delta, n + 1);
    oracle.matrix += rc.c_minus * ket_m * bra_p.transpose() /
                     energy_gap(to.e_minus - from.e_plus - delta, n + 1);
    oracle.matrix += rc.d_plus * ket_p * bra_m.transpose() /
                     energy_gap(to.e_plus - from.e_minus - delta, n + 1);
    oracle.matrix += rc.d_minus * ket_m * bra_m.transpose() /
                     energy_gap(to.e_minus - from.e_minus - delta, n + 1);
  }
  return oracle;
}

Eigen::VectorXcd KappaOracle::power_on_vacuum(std::int64_t k) const {
  if (k < 0 || k > kmax) throw std::invalid_argument("power outside oracle range");
  Eigen::VectorXcd x = Eigen::VectorXcd::Zero(matrix.rows());
  x[0] = 1.0;
  for (std::int64_t i = 0; i < k; ++i) x = matrix * x;
  return x;
}

std::array<Complex, 2> KappaOracle::scaled_projections(std::int64_t k) const {
  if (k < 1) throw std::invalid_argument("projections need k >= 1");
  const Eigen::VectorXcd x = power_on_vacuum(k);
  const JcEigensystem sys = jc_eigensystem(k - 1, params);
  const DressedVector comp{x[static_cast<Eigen::Index>(upper_index(k - 1))],
                           x[static_cast<Eigen::Index>(lower_index(k - 1))]};
  const double scale = std::exp(-0.5 * std::lgamma(static_cast<double>(k) + 1.0));
  return {scale * bilinear(sys.left_plus, comp), scale * bilinear(sys.left_minus, comp)};
}

}  // namespace rydeit
