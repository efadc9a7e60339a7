#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rydeit/exact.hpp"

using namespace rydeit;

namespace {

ModelParams fig2_params(std::int64_t m) {
  ModelParams p;
  p.omega_p = 0.5;
  p.omega_c = 1.0;
  p.gamma_e = 10.0;
  p.gamma_r = 0.5;
  p.m = m;
  return p;
}

}  // namespace

TEST_CASE("susceptibility of simple states") {
  for (std::int64_t m : {1, 4}) {
    const FockBasis basis(m);
    VectorC ground = VectorC::Zero(static_cast<Eigen::Index>(basis.size()));
    ground[0] = 1.0;
    CHECK(susceptibility(ground, basis, 1, m) == Complex(0, 0));
    CHECK(susceptibility(ground, basis, 2, m) == Complex(0, 0));
  }

  // Single particle: chi^(1) = conj(c_g) c_e, chi^(2) vanishes.
  const FockBasis one(1);
  VectorC psi(3);
  psi << Complex(0.6, 0.1), Complex(0.2, -0.3), Complex(-0.4, 0.5);
  psi.normalize();
  const Complex c1 = susceptibility(psi, one, 1, 1);
  CHECK(std::abs(c1 - std::conj(psi[0]) * psi[2]) < 1e-15);
  CHECK(susceptibility(psi, one, 2, 1) == Complex(0, 0));
  // v^T O v / v^T v
  const Complex bi = susceptibility(psi, one, 1, 1, Expectation::biorthogonal);
  CHECK(std::abs(bi - psi[0] * psi[2] / psi.cwiseProduct(psi).sum()) < 1e-15);
}

TEST_CASE("two-particle second order against explicit operator") {
  const FockBasis basis(2);
  VectorC psi = VectorC::LinSpaced(6, 1.0, 6.0).cast<Complex>();
  psi[3] *= Complex(0, 1);
  psi.normalize();
  // (a_g^dag a_e)^2 only connects (0,0,2) -> (2,0,0) with amplitude sqrt2*sqrt2.
  const auto src = *basis.index({0, 0, 2});
  const Complex expected = std::conj(psi[0]) * 2.0 * psi[static_cast<Eigen::Index>(src)] / 4.0;
  CHECK(std::abs(susceptibility(psi, basis, 2, 2) - expected) < 1e-15);
}

TEST_CASE("weak probe at resonance is transparent") {
  ModelParams p;
  p.omega_p = 0.01;
  p.gamma_e = 2.0;
  const ExactPoint pt = exact_point(p);
  REQUIRE(pt.ok);
  CHECK(std::abs(pt.chi1) < 1e-4);
  CHECK(pt.chi2 == Complex(0, 0));
}

TEST_CASE("single particle agrees with a generic 3x3 eigensolver") {
  oracle::Draws draws(21);
  for (int i = 0; i < 20; ++i) {
    ModelParams p = draws.decaying();
    p.omega_p = draws.uniform(0.01, 1.0);
    const ExactPoint pt = exact_point(p);
    REQUIRE(pt.ok);
    CHECK(oracle::rel_err(pt.chi1, oracle::chi_single_exact(p)) < 1e-10);
  }
}

TEST_CASE("single-particle susceptibility follows the closed form at weak probe") {
  ModelParams p;
  p.omega_p = 0.01;
  p.gamma_e = 2.0;
  p.gamma_r = 0.3;
  for (int i = 0; i <= 48; ++i) {
    p.delta = -6.0 + 0.25 * i;
    const ExactPoint pt = exact_point(p);
    REQUIRE(pt.ok);
    CHECK(oracle::rel_err(pt.chi1, oracle::chi_single_formula(p)) < 1e-3);
  }
}

TEST_CASE("zero detuning without interaction") {
  oracle::Draws draws(22);
  for (int i = 0; i < 10; ++i) {
    for (std::int64_t m = 1; m <= 6; ++m) {
      ModelParams p = draws.decaying();
      p.omega_p = draws.uniform(0.01, 0.5);
      p.delta = 0.0;
      p.m = m;
      const ExactPoint pt = exact_point(p);
      REQUIRE(pt.ok);
      const double scale = std::max({1e-30, std::abs(pt.chi1), std::abs(pt.chi2)});
      CHECK(std::abs(pt.chi1.real()) <= 1e-8 * scale);
      CHECK(std::abs(pt.chi2.imag()) <= 1e-8 * scale);
    }
  }
}

TEST_CASE("condensate structure without interaction") {
  // H is quadratic at U = 0 and the state is M particles in one mode, so
  // chi^(1) does not depend on M and chi^(2) = (1 - 1/M) (chi^(1))^2.
  const ExactPoint one = exact_point(fig2_params(1));
  for (std::int64_t m : {2, 5, 12}) {
    const ExactPoint pt = exact_point(fig2_params(m));
    REQUIRE(pt.ok);
    CHECK(oracle::rel_err(pt.chi1, one.chi1) < 1e-9);
    const double md = static_cast<double>(m);
    CHECK(oracle::rel_err(pt.chi2, (md - 1.0) / md * one.chi1 * one.chi1) < 1e-9);
    CHECK(std::abs(pt.eigenvalue - static_cast<double>(m) * one.eigenvalue) < 1e-9);
  }
}

TEST_CASE("profiles keep grid order and isolate failures") {
  ModelParams p = fig2_params(3);
  p.u = 5.0;
  const std::vector<double> grid{2.0, -1.0, 0.0, 0.5, -3.0};
  ExactOptions serial;
  serial.jobs = 1;
  ExactOptions threaded;
  threaded.jobs = 4;
  const auto a = exact_profile(p, "delta", grid, serial);
  const auto b = exact_profile(p, "delta", grid, threaded);
  REQUIRE(a.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(a[i].value == grid[i]);
    CHECK(a[i].ok);
    CHECK(a[i].chi1 == b[i].chi1);
    CHECK(a[i].chi2 == b[i].chi2);
    ModelParams q = p;
    q.delta = grid[i];
    CHECK(exact_point(q).chi1 == a[i].chi1);
  }

  const auto failed = exact_profile(p, "m", {2.0, 400.0, 3.0});
  CHECK(failed[0].ok);
  CHECK_FALSE(failed[1].ok);
  CHECK_FALSE(failed[1].error.empty());
  CHECK(std::isnan(failed[1].chi1.real()));
  CHECK(failed[2].ok);

  CHECK_THROWS_AS(exact_profile(p, "gamma_e", {1.0}), std::invalid_argument);
  CHECK_THROWS_AS(exact_profile(p, "delta", {}), std::invalid_argument);
}

TEST_CASE("interaction reduces transparency at resonance") {
  ModelParams p = fig2_params(6);
  const auto rows = exact_profile(p, "u", {0.0, 1.0, 10.0, 100.0});
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].chi1.imag() >= rows[i - 1].chi1.imag());
}
