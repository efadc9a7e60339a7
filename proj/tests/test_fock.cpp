#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "rydeit/fock.hpp"
#include "rydeit/params.hpp"

using namespace rydeit;

TEST_CASE("basis sizes and ordering") {
  const FockBasis one(1);
  REQUIRE(one.size() == 3);
  CHECK(one[0] == FockState{1, 0, 0});
  CHECK(one[1] == FockState{0, 1, 0});
  CHECK(one[2] == FockState{0, 0, 1});

  CHECK(FockBasis(0).size() == 1);
  CHECK(FockBasis(0)[0] == FockState{0, 0, 0});
  CHECK(FockBasis(50).size() == 1326);
  CHECK(FockBasis::dimension(150) == 11476);
}

TEST_CASE("basis invariants for m <= 20") {
  for (std::int64_t m = 0; m <= 20; ++m) {
    const FockBasis b = enumerate_basis(m);
    CHECK(b.size() == static_cast<std::size_t>((m + 2) * (m + 1) / 2));
    std::set<FockState> seen;
    for (std::size_t i = 0; i < b.size(); ++i) {
      const FockState& s = b[i];
      CHECK(s.total() == m);
      CHECK(s.n_g >= 0);
      CHECK(seen.insert(s).second);
      REQUIRE(b.index(s).has_value());
      CHECK(*b.index(s) == i);
      if (i > 0) CHECK(b[i - 1] > s);
    }
    CHECK_FALSE(b.index(FockState{m + 1, 0, 0}).has_value());
    CHECK_FALSE(b.index(FockState{-1, 1, m}).has_value());
  }
}

TEST_CASE("hopping amplitudes") {
  auto hop = hopping_amplitude({1, 0, 0}, Band::ground, Band::excited);
  REQUIRE(hop);
  CHECK(hop->dst == FockState{0, 0, 1});
  CHECK(hop->amplitude == doctest::Approx(1.0));

  hop = hopping_amplitude({0, 0, 2}, Band::excited, Band::rydberg);
  REQUIRE(hop);
  CHECK(hop->dst == FockState{0, 1, 1});
  CHECK(hop->amplitude == doctest::Approx(std::sqrt(2.0)));

  hop = hopping_amplitude({3, 0, 1}, Band::excited, Band::ground);
  REQUIRE(hop);
  CHECK(hop->dst == FockState{4, 0, 0});
  CHECK(hop->amplitude == doctest::Approx(2.0));

  CHECK_FALSE(hopping_amplitude({2, 0, 0}, Band::excited, Band::ground));
}

TEST_CASE("hop followed by its reverse gives number-operator eigenvalues") {
  const Band bands[] = {Band::ground, Band::rydberg, Band::excited};
  for (std::int64_t m = 0; m <= 6; ++m) {
    const FockBasis basis(m);
    for (const FockState& s : basis.states()) {
      for (Band from : bands) {
        for (Band to : bands) {
          if (from == to) continue;
          // a_from^dag a_to a_to^dag a_from = n_from (n_to + 1)
          const auto fwd = hopping_amplitude(s, from, to);
          const double expected = static_cast<double>(s[from] * (s[to] + 1));
          if (!fwd) {
            CHECK(expected == 0.0);
            continue;
          }
          const auto back = hopping_amplitude(fwd->dst, to, from);
          REQUIRE(back);
          CHECK(back->dst == s);
          CHECK(fwd->amplitude * back->amplitude == doctest::Approx(expected));
        }
      }
    }
  }
}

TEST_CASE("diagonal energies") {
  ModelParams p;
  p.m = 4;
  CHECK(diagonal_energy({4, 0, 0}, p) == Complex{0.0, 0.0});

  p.u = 3.0;
  p.gamma_r = 0.5;
  const Complex e = diagonal_energy({0, 2, 0}, p);
  CHECK(e.real() == doctest::Approx(3.0));
  CHECK(e.imag() == doctest::Approx(-1.0));

  ModelParams q;
  q.gamma_e = 10.0;
  q.delta = 2.0;
  const Complex f = diagonal_energy({0, 0, 1}, q);
  CHECK(f.real() == doctest::Approx(0.0));
  CHECK(f.imag() == doctest::Approx(-10.0));

  ModelParams r;
  r.gamma_e = 1.3;
  r.gamma_r = 0.2;
  r.u = -4.0;
  r.delta = 0.7;
  const FockBasis basis(8);
  for (const FockState& s : basis.states()) CHECK(diagonal_energy(s, r).imag() <= 0.0);
}

TEST_CASE("parameter validation") {
  ModelParams p;
  p.gamma_e = 1.0;
  CHECK_NOTHROW(validate(p, SolverPath::blockade));

  ModelParams bad = p;
  bad.gamma_r = -0.1;
  CHECK_THROWS_AS(validate(bad, SolverPath::exact), std::invalid_argument);
  bad = p;
  bad.m = 0;
  CHECK_THROWS_AS(validate(bad, SolverPath::exact), std::invalid_argument);
  bad = p;
  bad.omega_c = 0.0;
  CHECK_NOTHROW(validate(bad, SolverPath::exact));
  CHECK_THROWS_AS(validate(bad, SolverPath::blockade), std::invalid_argument);
  bad = p;
  bad.delta = std::nan("");
  CHECK_THROWS_AS(validate(bad, SolverPath::exact), std::invalid_argument);

  ModelParams strong = p;
  strong.omega_p = 2.0;
  CHECK(warnings(strong, SolverPath::blockade).size() == 1);
  CHECK(warnings(strong, SolverPath::exact).empty());
  CHECK(warnings(p, SolverPath::blockade).empty());
}

TEST_CASE("named parameter access") {
  ModelParams p;
  for (const char* name : {"omega_p", "omega_c", "gamma_e", "gamma_r", "delta", "u", "m"}) {
    CHECK(is_param_name(name));
    CHECK(get_param(with_param(p, name, 7.0), name) == 7.0);
  }
  CHECK_FALSE(is_param_name("theta"));
  CHECK_THROWS_AS(with_param(p, "theta", 1.0), std::invalid_argument);
  CHECK(with_param(p, "m", 64.6).m == 65);
}
