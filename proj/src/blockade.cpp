#include "rydeit/blockade.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "rydeit/errors.hpp"

namespace rydeit {

namespace {

double sqrt_d(std::int64_t x) { return std::sqrt(static_cast<double>(x)); }

double coupling(std::int64_t n, const ModelParams& p) { return p.omega_c * sqrt_d(n + 1); }

void require_regular(const ModePair& mode) {
  if (mode.near_singular)
    throw SingularityError("mode n=" + std::to_string(mode.n) +
                               " is singular (cos theta = +-1); eigenvectors are indeterminate",
                           mode.n);
}

DressedVector raise(const DressedVector& x, std::int64_t n) {
  return {sqrt_d(n + 1) * x.upper, sqrt_d(n + 2) * x.lower};
}

Complex checked_denominator(Complex d, std::int64_t k, const char* what) {
  if (std::abs(d) <= 1e-10)
    throw SingularityError(std::string("vanishing denominator ") + what + " at k=" +
                               std::to_string(k),
                           k);
  return d;
}

}  // namespace

Complex principal_sqrt(Complex z) {
  Complex r = std::sqrt(z);
  if (r.real() < 0.0 || (r.real() == 0.0 && r.imag() < 0.0)) r = -r;
  return r;
}

Complex cos_theta(std::int64_t n, const ModelParams& p) {
  return {(p.gamma_e - p.gamma_r) / (2.0 * coupling(n, p)), 0.0};
}

Complex sin_theta_squared(std::int64_t n, const ModelParams& p) {
  const Complex c = cos_theta(n, p);
  return (1.0 - c) * (1.0 + c);
}

ModePair mode_pair(std::int64_t n, const ModelParams& p) {
  if (n < 0) throw std::invalid_argument("mode index must be non-negative");
  if (!(p.omega_c > 0.0)) throw std::invalid_argument("mode_pair requires omega_c > 0");

  ModePair mode;
  mode.n = n;
  mode.cos_theta = cos_theta(n, p);
  mode.sin_theta = principal_sqrt(sin_theta_squared(n, p));
  mode.exp_plus = mode.cos_theta + kI * mode.sin_theta;
  mode.exp_minus = mode.cos_theta - kI * mode.sin_theta;
  // The smaller root loses digits to cancellation; take it as the inverse of
  // the larger one (the product of the roots is exactly 1).
  if (std::abs(mode.exp_plus) < std::abs(mode.exp_minus))
    mode.exp_plus = 1.0 / mode.exp_minus;
  else
    mode.exp_minus = 1.0 / mode.exp_plus;

  const double g = coupling(n, p);
  const double base = p.gamma_e * static_cast<double>(n) + p.gamma_r;
  mode.e_plus = -kI * (base + g * mode.exp_plus);
  mode.e_minus = -kI * (base + g * mode.exp_minus);
  mode.z_plus = principal_sqrt(1.0 - mode.exp_plus * mode.exp_plus);
  mode.z_minus = principal_sqrt(1.0 - mode.exp_minus * mode.exp_minus);
  mode.near_singular = std::abs(mode.sin_theta) < kSingularModeThreshold;
  return mode;
}

Block2 jc_block(std::int64_t n, const ModelParams& p) {
  const double g = coupling(n, p);
  const double nd = static_cast<double>(n);
  return {{{Complex{0.0, -(p.gamma_r + p.gamma_e * nd)}, Complex{-g, 0.0}},
           {Complex{-g, 0.0}, Complex{0.0, -p.gamma_e * (nd + 1.0)}}}};
}

Complex bilinear(const DressedVector& a, const DressedVector& b) {
  return a.upper * b.upper + a.lower * b.lower;
}

JcEigensystem jc_eigensystem(std::int64_t n, const ModelParams& p) {
  const ModePair mode = mode_pair(n, p);
  require_regular(mode);
  JcEigensystem sys;
  sys.n = n;
  sys.e_plus = mode.e_plus;
  sys.e_minus = mode.e_minus;
  sys.right_plus = {1.0 / mode.z_plus, kI * mode.exp_plus / mode.z_plus};
  sys.right_minus = {1.0 / mode.z_minus, kI * mode.exp_minus / mode.z_minus};
  sys.left_plus = sys.right_plus;
  sys.left_minus = sys.right_minus;
  return sys;
}

RaisingCoefficients raising_coefficients(std::int64_t n, const ModelParams& p) {
  const JcEigensystem from = jc_eigensystem(n, p);
  const JcEigensystem to = jc_eigensystem(n + 1, p);
  const DressedVector up_plus = raise(from.right_plus, n);
  const DressedVector up_minus = raise(from.right_minus, n);
  return {bilinear(to.left_plus, up_plus), bilinear(to.left_minus, up_plus),
          bilinear(to.left_plus, up_minus), bilinear(to.left_minus, up_minus)};
}

std::array<Complex, 2> vacuum_raising_coefficients(const ModelParams& p) {
  const JcEigensystem sys = jc_eigensystem(0, p);
  const DressedVector one_excited{0.0, 1.0};
  return {bilinear(sys.left_plus, one_excited), bilinear(sys.left_minus, one_excited)};
}

std::vector<VwStep> vw_recursion(const ModelParams& p, std::int64_t m) {
  if (m < 1) throw std::invalid_argument("vw_recursion needs m >= 1");
  if (m > kMaxVwDepth)
    throw std::invalid_argument("vw_recursion is depth-limited to k <= " +
                                std::to_string(kMaxVwDepth) + "; use pq_recursion");
  std::vector<ModePair> modes;
  modes.reserve(static_cast<std::size_t>(m));
  for (std::int64_t n = 0; n < m; ++n) {
    modes.push_back(mode_pair(n, p));
    require_regular(modes.back());
  }

  const ModePair& m0 = modes[0];
  std::vector<VwStep> out;
  out.reserve(static_cast<std::size_t>(m));
  Complex v = -1.0 / (2.0 * checked_denominator(m0.e_plus - p.delta, 1, "E0+ - delta") * m0.sin_theta);
  Complex w = 1.0 / (2.0 * checked_denominator(m0.e_minus - p.delta, 1, "E0- - delta") * m0.sin_theta);
  out.push_back({1, v, w});

  for (std::int64_t k = 2; k <= m; ++k) {
    const ModePair& a = modes[static_cast<std::size_t>(k - 1)];
    const ModePair& b = modes[static_cast<std::size_t>(k - 2)];
    const double sk = sqrt_d(k);
    const double sk1 = sqrt_d(k - 1);
    const Complex pp = checked_denominator(a.e_plus - b.e_plus - p.delta, k, "E+_{k-1} - E+_{k-2} - delta");
    const Complex pm = checked_denominator(a.e_plus - b.e_minus - p.delta, k, "E+_{k-1} - E-_{k-2} - delta");
    const Complex mp = checked_denominator(a.e_minus - b.e_plus - p.delta, k, "E-_{k-1} - E+_{k-2} - delta");
    const Complex mm = checked_denominator(a.e_minus - b.e_minus - p.delta, k, "E-_{k-1} - E-_{k-2} - delta");
    const Complex pre = 1.0 / (2.0 * kI * sk * a.sin_theta);
    const Complex b00 = pre * (-sk1 * a.exp_minus + sk * b.exp_plus) / pp;
    const Complex b01 = pre * (-sk1 * a.exp_minus + sk * b.exp_minus) / pm;
    const Complex b10 = pre * (sk1 * a.exp_plus - sk * b.exp_plus) / mp;
    const Complex b11 = pre * (sk1 * a.exp_plus - sk * b.exp_minus) / mm;
    const Complex nv = b00 * v + b01 * w;
    const Complex nw = b10 * v + b11 * w;
    v = nv;
    w = nw;
    out.push_back({k, v, w});
  }
  return out;
}

std::vector<PqStep> pq_recursion(const ModelParams& p, std::int64_t m) {
  validate(p, SolverPath::blockade);
  if (m < 1) throw std::invalid_argument("pq_recursion needs m >= 1");

  const Complex eta{p.delta, p.gamma_e};
  const Complex eta_r{p.delta, p.gamma_r};
  const double oc = p.omega_c;
  const Complex den = eta_r * eta - oc * oc;
  if (std::abs(den) <= 1e-14 * std::max(1.0, oc * oc))
    throw SingularityError("(i Gamma_R + delta)(i Gamma_e + delta) = Omega_c^2", 1);

  std::vector<PqStep> out;
  out.reserve(static_cast<std::size_t>(m));
  Complex pk = oc / den;
  Complex qk = (Complex{2.0 * p.delta, p.gamma_e + p.gamma_r} / 2.0) / den;
  double log_scale = 0.0;
  auto renormalise = [&] {
    const double f = std::max(std::abs(pk), std::abs(qk));
    if (f > 0.0 && std::isfinite(f)) {
      pk /= f;
      qk /= f;
      log_scale += std::log(f);
    }
  };
  renormalise();
  out.push_back({1, pk, qk, log_scale});

  const Complex omega = eta * eta - oc * oc;
  Complex sin2_prev = sin_theta_squared(0, p);  // theta_{k-2}
  for (std::int64_t k = 2; k <= m; ++k) {
    const double kd = static_cast<double>(k);
    const Complex c1 = cos_theta(k - 1, p);
    const Complex sin2_cur = sin_theta_squared(k - 1, p);
    const Complex t = -2.0 * eta * oc * sqrt_d(k - 1);
    const Complex f = omega * omega - t * t * sin2_prev;
    const double fscale = std::max(std::norm(omega), std::norm(t));
    if (std::abs(f) <= 1e-12 * fscale)
      throw SingularityError("recursion matrix denominator F_k vanishes at k=" + std::to_string(k), k);

    const Complex r_big = kI * oc * std::sqrt(kd / (kd - 1.0)) * c1 - eta * sqrt_d(k - 1);
    const double s_big = -oc * (2.0 * kd - 1.0);
    const Complex r_small = kI * eta * c1 / sqrt_d(k - 1) -
                            oc * std::sqrt(kd * (kd - 1.0)) * (sin2_cur + sin2_prev);
    const Complex s_small = kI * oc * c1 - eta * sqrt_d(k);

    const Complex pre = 1.0 / (sqrt_d(k) * f);
    const Complex a00 = pre * (r_big * omega + s_big * t * sin2_prev);
    const Complex a01 = pre * (r_big * t + s_big * omega);
    const Complex a10 = pre * (r_small * omega + s_small * t * sin2_prev);
    const Complex a11 = pre * (r_small * t + s_small * omega);
    const Complex np = a00 * pk + a01 * qk;
    const Complex nq = a10 * pk + a11 * qk;
    pk = np;
    qk = nq;
    renormalise();
    out.push_back({k, pk, qk, log_scale});
    sin2_prev = sin2_cur;
  }
  return out;
}

double BlockadeState::norm_squared() const {
  double s = std::norm(amp0);
  for (const auto& a : amps_r) s += std::norm(a);
  for (const auto& a : amps_e) s += std::norm(a);
  return s;
}

BlockadeState assemble_state(const ModelParams& params, std::int64_t m) {
  const auto steps = pq_recursion(params, m);
  return assemble_state(params, m, steps);
}

BlockadeState assemble_state(const ModelParams& params, std::int64_t m,
                             std::span<const PqStep> steps) {
  if (m < 1) throw std::invalid_argument("assemble_state needs m >= 1");
  if (static_cast<std::int64_t>(steps.size()) < m)
    throw std::invalid_argument("recursion table shorter than particle number");

  const auto count = static_cast<std::size_t>(m);
  const double md = static_cast<double>(m);
  const double log_probe = std::log(std::abs(params.omega_p));
  const double probe_sign = params.omega_p < 0.0 ? -1.0 : 1.0;

  // amplitude = mantissa * exp(log_weight); log_weight collects
  // log sqrt(binom(M,k)) + k log|omega_p| + recursion scale.
  std::vector<double> log_weight(count);
  std::vector<Complex> mant_r(count), mant_e(count);
  double log_max = 0.0;  // |M,0,0> has weight 1
  for (std::size_t i = 0; i < count; ++i) {
    const auto k = static_cast<std::int64_t>(i) + 1;
    const double kd = static_cast<double>(k);
    const PqStep& st = steps[i];
    const double sign = (k % 2 == 1) ? probe_sign : 1.0;
    const double lw = 0.5 * (std::lgamma(md + 1.0) - std::lgamma(kd + 1.0) -
                             std::lgamma(md - kd + 1.0)) +
                      kd * log_probe + st.log_scale;
    log_weight[i] = lw;
    mant_r[i] = sign * st.p;
    // i (v e^{i theta} + w e^{-i theta}) = i (p cos theta + i q)
    mant_e[i] = sign * kI * (st.p * cos_theta(k - 1, params) + kI * st.q);
    for (Complex c : {mant_r[i], mant_e[i]}) {
      if (std::abs(c) > 0.0 && std::isfinite(lw)) log_max = std::max(log_max, lw + std::log(std::abs(c)));
    }
  }

  BlockadeState state;
  state.m = m;
  state.amp0 = std::exp(-log_max);
  state.amps_r.resize(count);
  state.amps_e.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double f = std::isfinite(log_weight[i]) ? std::exp(log_weight[i] - log_max) : 0.0;
    state.amps_r[i] = mant_r[i] * f;
    state.amps_e[i] = mant_e[i] * f;
  }
  const double norm = std::sqrt(state.norm_squared());
  state.amp0 /= norm;
  for (auto& a : state.amps_r) a /= norm;
  for (auto& a : state.amps_e) a /= norm;
  state.normalized = true;
  return state;
}

std::vector<Complex> to_fock_amplitudes(const BlockadeState& s, const FockBasis& basis) {
  if (basis.m() != s.m) throw std::invalid_argument("basis particle number mismatch");
  std::vector<Complex> out(basis.size());
  out[*basis.index({s.m, 0, 0})] = s.amp0;
  for (std::int64_t k = 1; k <= s.m; ++k) {
    const auto i = static_cast<std::size_t>(k - 1);
    out[*basis.index({s.m - k, 1, k - 1})] += s.amps_r[i];
    out[*basis.index({s.m - k, 0, k})] += s.amps_e[i];
  }
  return out;
}

namespace {

// a_g^dag a_e on the blockade manifold; the image stays in the manifold.
BlockadeState lower_excitation(const BlockadeState& s) {
  BlockadeState out;
  out.m = s.m;
  out.amp0 = 0.0;
  out.amps_r.assign(s.amps_r.size(), Complex{});
  out.amps_e.assign(s.amps_e.size(), Complex{});
  for (std::int64_t k = 1; k <= s.m; ++k) {
    const auto i = static_cast<std::size_t>(k - 1);
    if (k >= 2) {
      const auto hop = hopping_amplitude({s.m - k, 1, k - 1}, Band::excited, Band::ground);
      out.amps_r[i - 1] += hop->amplitude * s.amps_r[i];
    }
    const auto hop = hopping_amplitude({s.m - k, 0, k}, Band::excited, Band::ground);
    if (k == 1)
      out.amp0 += hop->amplitude * s.amps_e[i];
    else
      out.amps_e[i - 1] += hop->amplitude * s.amps_e[i];
  }
  return out;
}

Complex inner(const BlockadeState& a, const BlockadeState& b) {
  Complex s = std::conj(a.amp0) * b.amp0;
  for (std::size_t i = 0; i < a.amps_r.size(); ++i) {
    s += std::conj(a.amps_r[i]) * b.amps_r[i];
    s += std::conj(a.amps_e[i]) * b.amps_e[i];
  }
  return s;
}

}  // namespace

Complex blockade_susceptibility(const BlockadeState& state, int order) {
  if (order < 1) throw std::invalid_argument("susceptibility order must be >= 1");
  BlockadeState applied = state;
  for (int k = 0; k < order; ++k) applied = lower_excitation(applied);
  return inner(state, applied) / std::pow(static_cast<double>(state.m), order);
}

Complex blockade_susceptibility(const ModelParams& params, int order) {
  return blockade_susceptibility(assemble_state(params, params.m), order);
}

Complex chi_single(const ModelParams& p) {
  const Complex eta_r{p.delta, p.gamma_r};
  const Complex eta{p.delta, p.gamma_e};
  const Complex den = eta_r * eta - p.omega_c * p.omega_c;
  if (den == Complex{}) throw std::domain_error("chi_single: vanishing denominator");
  return -p.omega_p * eta_r / den;
}

ChiLimits chi_infinite(const ModelParams& p) {
  const Complex eta{p.delta, p.gamma_e};
  if (eta == Complex{}) throw std::domain_error("chi_infinite: Gamma_e = delta = 0");
  const Complex first = -p.omega_p / eta;
  return {first, first * first};
}

}  // namespace rydeit
