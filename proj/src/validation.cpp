#include "rydeit/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <random>

#include "rydeit/blockade.hpp"
#include "rydeit/eigensolve.hpp"
#include "rydeit/exact.hpp"
#include "rydeit/kappa.hpp"
#include "rydeit/nhh.hpp"
#include "rydeit/relaxation.hpp"
#include "rydeit/sweep.hpp"

namespace rydeit {

namespace {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Gamma_e > Gamma_R >= 0, away from cos theta_n = 1.
ModelParams random_blockade_params(Rng& rng) {
  ModelParams p;
  p.omega_c = uniform(rng, 0.5, 2.0);
  p.omega_p = 0.01 * p.omega_c;
  p.gamma_r = uniform(rng, 0.0, 1.0);
  p.gamma_e = p.gamma_r + uniform(rng, 0.1, 5.0);
  p.delta = uniform(rng, -3.0, 3.0);
  return p;
}

ModelParams fig2_params() {
  ModelParams p;
  p.omega_p = 0.5;
  p.omega_c = 1.0;
  p.gamma_e = 10.0;
  p.gamma_r = 0.5;
  return p;
}

double rel(Complex a, Complex b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

struct Measure {
  double deviation = 0.0;
  std::string detail;
};

CheckResult timed(const std::string& name, double tolerance, const std::function<Measure()>& fn) {
  CheckResult r;
  r.name = name;
  r.tolerance = tolerance;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Measure m = fn();
    r.deviation = m.deviation;
    r.detail = m.detail;
    r.passed = std::isfinite(m.deviation) && m.deviation <= tolerance;
  } catch (const std::exception& e) {
    r.deviation = std::numeric_limits<double>::infinity();
    r.detail = std::string("exception: ") + e.what();
    r.passed = false;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

Measure mode_residuals() {
  Rng rng(101);
  double worst = 0.0;
  for (int draw = 0; draw < 10; ++draw) {
    const ModelParams p = random_blockade_params(rng);
    for (std::int64_t n = 0; n <= 100; ++n) {
      const JcEigensystem sys = jc_eigensystem(n, p);
      const Block2 b = jc_block(n, p);
      for (auto [e, v] : {std::pair{sys.e_plus, sys.right_plus}, std::pair{sys.e_minus, sys.right_minus}}) {
        const Complex r0 = b[0][0] * v.upper + b[0][1] * v.lower - e * v.upper;
        const Complex r1 = b[1][0] * v.upper + b[1][1] * v.lower - e * v.lower;
        const double scale = std::max(1.0, std::abs(e));
        worst = std::max(worst, std::hypot(std::abs(r0), std::abs(r1)) / scale);
      }
    }
  }
  return {worst, "10 draws, modes n <= 100, residual / max(1, |E|)"};
}

Measure mode_orthonormality() {
  Rng rng(102);
  double worst = 0.0;
  for (int draw = 0; draw < 10; ++draw) {
    const ModelParams p = random_blockade_params(rng);
    for (std::int64_t n = 0; n <= 100; ++n) {
      const JcEigensystem s = jc_eigensystem(n, p);
      worst = std::max({worst, std::abs(bilinear(s.left_plus, s.right_plus) - 1.0),
                        std::abs(bilinear(s.left_minus, s.right_minus) - 1.0),
                        std::abs(bilinear(s.left_plus, s.right_minus)),
                        std::abs(bilinear(s.left_minus, s.right_plus))});
    }
  }
  return {worst, "10 draws, modes n <= 100"};
}

Measure recursion_equivalence() {
  Rng rng(103);
  double worst = 0.0;
  for (int draw = 0; draw < 50; ++draw) {
    const ModelParams p = random_blockade_params(rng);
    const auto vw = vw_recursion(p, 50);
    const auto pq = pq_recursion(p, 50);
    for (std::size_t i = 0; i < vw.size(); ++i) {
      const Complex s = mode_pair(vw[i].k - 1, p).sin_theta;
      worst = std::max({worst, rel(pq[i].p_value(), vw[i].v + vw[i].w),
                        rel(pq[i].q_value(), s * (vw[i].v - vw[i].w))});
    }
  }
  return {worst, "50 draws, k <= 50, relative"};
}

Measure kappa_oracle() {
  Rng rng(104);
  std::vector<ModelParams> sets{fig2_params()};
  for (int i = 0; i < 10; ++i) sets.push_back(random_blockade_params(rng));
  double worst = 0.0;
  for (const auto& p : sets) {
    const KappaOracle oracle = kappa0_oracle(p, 8);
    const auto vw = vw_recursion(p, 8);
    for (std::int64_t k = 1; k <= 8; ++k) {
      const auto proj = oracle.scaled_projections(k);
      const ModePair mp = mode_pair(k - 1, p);
      const auto& step = vw[static_cast<std::size_t>(k - 1)];
      worst = std::max({worst, rel(proj[0], step.v * mp.z_plus), rel(proj[1], step.w * mp.z_minus)});
    }
  }
  return {worst, "fig2 parameters + 10 draws, k <= 8, relative"};
}

Measure zero_detuning() {
  Rng rng(105);
  double worst = 0.0;
  for (int draw = 0; draw < 20; ++draw) {
    ModelParams p = random_blockade_params(rng);
    p.delta = 0.0;
    for (std::int64_t m : {2, 10, 65, 200}) {
      p.m = m;
      const BlockadeState st = assemble_state(p, m);
      const Complex c1 = blockade_susceptibility(st, 1);
      const Complex c2 = blockade_susceptibility(st, 2);
      worst = std::max({worst, std::abs(c1.real()) / std::abs(c1), std::abs(c2.imag()) / std::abs(c2)});
    }
  }
  return {worst, "blockade path, 20 draws, M in {2,10,65,200}, relative to |chi|"};
}

Measure limit_consistency() {
  Rng rng(106);
  double worst = 0.0;
  for (int draw = 0; draw < 20; ++draw) {
    ModelParams p = random_blockade_params(rng);
    p.m = 1;
    const Complex closed = chi_single(p);
    worst = std::max(worst, rel(blockade_susceptibility(p, 1), closed));
    worst = std::max(worst, rel(exact_point(p).chi1, closed));
    const ChiLimits lim = chi_infinite(p);
    worst = std::max(worst, rel(lim.second, lim.first * lim.first));
    worst = std::max(worst, rel(lim.first, -p.omega_p / (kI * p.gamma_e + p.delta)));
  }
  return {worst, "single-particle and large-M closed forms against both paths, relative"};
}

Measure cross_path() {
  ModelParams p;
  p.omega_c = 1.0;
  p.omega_p = 0.01;
  p.gamma_e = 10.0;
  p.gamma_r = 0.5;
  double worst = 0.0;
  for (double u : {100.0, 1000.0}) {
    for (std::int64_t m = 1; m <= 4; ++m) {
      for (int i = 0; i <= 24; ++i) {
        p.u = u;
        p.m = m;
        p.delta = -3.0 + 0.25 * i;
        const ExactPoint ex = exact_point(p);
        if (!ex.ok) throw std::runtime_error(ex.error);
        const Complex bl = blockade_susceptibility(p, 1);
        worst = std::max(worst, std::abs(ex.chi1 - bl) / std::abs(ex.chi1));
      }
    }
  }
  return {worst, "U in {100, 1000}, M <= 4, delta in [-3, 3], |chi_exact - chi_blockade| / |chi_exact|"};
}

Measure relaxation_bound() {
  double worst = -std::numeric_limits<double>::infinity();
  ModelParams p;
  for (int i = 0; i < 100; ++i) {
    for (int j = 0; j < 100; ++j) {
      p.gamma_r = 0.1 * (i % 10) * 0.5;
      p.gamma_e = p.gamma_r + 0.05 + 0.1 * (i / 10) + 0.01 * (j % 10);
      p.omega_c = 5.0 * (1 + j) / 100.0;
      worst = std::max(worst, relaxation_report(p).max_exponent() + p.gamma_r);
    }
  }
  return {std::max(worst, 0.0), "10^4 points with Gamma_e > Gamma_R; max(exponent + Gamma_R, 0)"};
}

Measure dense_eigenpair() {
  ModelParams p = fig2_params();
  p.m = 50;
  const NhhMatrix h = build_nhh(p);
  const EigenPair pair = least_decaying_eigenpair(h);
  return {pair.residual / h.frobenius_norm(),
          "M = 50, dimension " + std::to_string(h.dimension()) + ", residual / ||H||_F"};
}

Measure dense_sweep() {
  ModelParams p = fig2_params();
  p.m = 50;
  std::vector<double> grid;
  for (int i = 0; i <= 8; ++i) grid.push_back(-6.0 + 1.5 * i);
  const auto rows = exact_profile(p, "delta", grid);
  double worst = 0.0;
  for (const auto& r : rows) {
    if (!r.ok) throw std::runtime_error(r.error);
    // At U = 0 the Hamiltonian is quadratic and the least-decaying state is a
    // condensate in one single-particle mode, so chi^(1) matches M = 1.
    ModelParams one = p;
    one.m = 1;
    one.delta = r.value;
    worst = std::max(worst, rel(r.chi1, exact_point(one).chi1));
  }
  return {worst, "M = 50, U = 0, 9 detunings against the exact M = 1 value"};
}

}  // namespace

bool ValidationReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

nlohmann::json ValidationReport::to_json() const {
  nlohmann::json checks_json = nlohmann::json::array();
  for (const auto& c : checks) {
    checks_json.push_back({{"name", c.name},
                           {"tolerance", c.tolerance},
                           {"deviation", std::isfinite(c.deviation) ? nlohmann::json(c.deviation)
                                                                    : nlohmann::json("inf")},
                           {"passed", c.passed},
                           {"seconds", c.seconds},
                           {"detail", c.detail}});
  }
  return {{"schema_version", kSchemaVersion},
          {"code_version", kCodeVersion},
          {"level", level == ValidationLevel::fast ? "fast" : "full"},
          {"passed", passed()},
          {"checks", std::move(checks_json)}};
}

ValidationReport run_validation(ValidationLevel level) {
  ValidationReport report;
  report.level = level;
  report.checks.push_back(timed("mode_eigen_residuals", 1e-12, mode_residuals));
  report.checks.push_back(timed("bilinear_orthonormality", 1e-12, mode_orthonormality));
  report.checks.push_back(timed("recursion_equivalence", 1e-9, recursion_equivalence));
  report.checks.push_back(timed("kappa0_oracle", 1e-8, kappa_oracle));
  report.checks.push_back(timed("zero_detuning_identity", 1e-8, zero_detuning));
  report.checks.push_back(timed("closed_form_limits", 1e-3, limit_consistency));
  report.checks.push_back(timed("exact_vs_blockade", 0.05, cross_path));
  report.checks.push_back(timed("relaxation_bound", 1e-12, relaxation_bound));
  if (level == ValidationLevel::full) {
    report.checks.push_back(timed("dense_eigenpair_residual", 1e-10, dense_eigenpair));
    report.checks.push_back(timed("dense_m50_sweep", 1e-6, dense_sweep));
  }
  return report;
}

}  // namespace rydeit
