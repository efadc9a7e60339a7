#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "rydeit/errors.hpp"
#include "rydeit/kappa.hpp"

using namespace rydeit;

namespace {

ModelParams fig2_params() {
  ModelParams p;
  p.omega_p = 0.5;
  p.omega_c = 1.0;
  p.gamma_e = 10.0;
  p.gamma_r = 0.5;
  return p;
}

// Mode of a position in the truncated space; -1 for the vacuum.
std::int64_t mode_of(Eigen::Index i) { return i == 0 ? -1 : (i - 1) / 2; }

}  // namespace

TEST_CASE("first order matches the closed-form start of the recursion") {
  ModelParams p = fig2_params();
  for (double d : {0.0, -1.3, 2.2}) {
    p.delta = d;
    const KappaOracle k = kappa0_oracle(p, 2);
    const auto proj = k.scaled_projections(1);
    const ModePair m0 = mode_pair(0, p);
    const Complex v1 = -1.0 / (2.0 * (m0.e_plus - d) * m0.sin_theta);
    const Complex w1 = 1.0 / (2.0 * (m0.e_minus - d) * m0.sin_theta);
    CHECK(oracle::rel_err(proj[0], v1 * m0.z_plus) < 1e-10);
    CHECK(oracle::rel_err(proj[1], w1 * m0.z_minus) < 1e-10);
  }
}

TEST_CASE("powers of kappa(0) reproduce the v/w coefficients") {
  oracle::Draws draws(41);
  std::vector<ModelParams> sets{fig2_params()};
  for (int i = 0; i < 10; ++i) sets.push_back(draws.decaying());
  for (const auto& p : sets) {
    const KappaOracle k = kappa0_oracle(p, 8);
    const auto vw = vw_recursion(p, 8);
    for (std::int64_t n = 1; n <= 8; ++n) {
      const auto proj = k.scaled_projections(n);
      const ModePair mp = mode_pair(n - 1, p);
      const auto& s = vw[static_cast<std::size_t>(n - 1)];
      CHECK(oracle::rel_err(proj[0], s.v * mp.z_plus) < 1e-8);
      CHECK(oracle::rel_err(proj[1], s.w * mp.z_minus) < 1e-8);
    }
  }
}

TEST_CASE("kappa(0) only raises the mode index by one") {
  const KappaOracle k = kappa0_oracle(fig2_params(), 6);
  for (Eigen::Index i = 0; i < k.matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < k.matrix.cols(); ++j) {
      if (mode_of(i) == mode_of(j) + 1) continue;
      CHECK(k.matrix(i, j) == Complex(0, 0));
    }
  }
  // The power lives entirely in mode k-1.
  const Eigen::VectorXcd x = k.power_on_vacuum(4);
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (mode_of(i) != 3) CHECK(x[i] == Complex(0, 0));
}

TEST_CASE("oracle limits") {
  CHECK_THROWS_AS(kappa0_oracle(fig2_params(), 0), std::invalid_argument);
  CHECK_THROWS_AS(kappa0_oracle(fig2_params(), kMaxKappaOrder + 1), std::invalid_argument);
  ModelParams sing;
  sing.gamma_e = 2.0;
  sing.omega_c = 1.0;
  CHECK_THROWS_AS(kappa0_oracle(sing, 3), SingularityError);
  const KappaOracle k = kappa0_oracle(fig2_params(), 3);
  CHECK_THROWS_AS(k.power_on_vacuum(4), std::invalid_argument);
  CHECK_THROWS_AS(k.scaled_projections(0), std::invalid_argument);
}
