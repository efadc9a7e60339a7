#include "rydeit/fock.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rydeit {

namespace {

constexpr std::int64_t kMaxParticles = 1'000'000;

}  // namespace

void validate(const ModelParams& p, SolverPath path) {
  auto finite = [](double x) { return std::isfinite(x); };
  if (!finite(p.omega_p) || !finite(p.omega_c) || !finite(p.gamma_e) ||
      !finite(p.gamma_r) || !finite(p.delta) || !finite(p.u))
    throw std::invalid_argument("model parameters must be finite");
  if (p.gamma_e < 0.0 || p.gamma_r < 0.0)
    throw std::invalid_argument("decay rates must be non-negative");
  if (p.m < 1 || p.m > kMaxParticles)
    throw std::invalid_argument("particle number must lie in [1, 1e6], got " +
                                std::to_string(p.m));
  if (path == SolverPath::blockade && !(p.omega_c > 0.0))
    throw std::invalid_argument("blockade path requires omega_c > 0");
  if (path == SolverPath::exact && p.omega_c < 0.0)
    throw std::invalid_argument("omega_c must be non-negative");
}

std::vector<std::string> warnings(const ModelParams& p, SolverPath path) {
  std::vector<std::string> out;
  if (path == SolverPath::blockade && std::abs(p.omega_p) >= p.omega_c)
    out.emplace_back("omega_p >= omega_c: perturbative expansion in omega_p is not controlled");
  return out;
}

bool is_param_name(std::string_view name) {
  return name == "omega_p" || name == "omega_c" || name == "gamma_e" ||
         name == "gamma_r" || name == "delta" || name == "u" || name == "m";
}

ModelParams with_param(ModelParams p, std::string_view name, double value) {
  if (name == "omega_p") p.omega_p = value;
  else if (name == "omega_c") p.omega_c = value;
  else if (name == "gamma_e") p.gamma_e = value;
  else if (name == "gamma_r") p.gamma_r = value;
  else if (name == "delta") p.delta = value;
  else if (name == "u") p.u = value;
  else if (name == "m") p.m = static_cast<std::int64_t>(std::llround(value));
  else throw std::invalid_argument("unknown parameter '" + std::string(name) + "'");
  return p;
}

double get_param(const ModelParams& p, std::string_view name) {
  if (name == "omega_p") return p.omega_p;
  if (name == "omega_c") return p.omega_c;
  if (name == "gamma_e") return p.gamma_e;
  if (name == "gamma_r") return p.gamma_r;
  if (name == "delta") return p.delta;
  if (name == "u") return p.u;
  if (name == "m") return static_cast<double>(p.m);
  throw std::invalid_argument("unknown parameter '" + std::string(name) + "'");
}

std::int64_t& FockState::operator[](Band b) {
  switch (b) {
    case Band::ground: return n_g;
    case Band::rydberg: return n_r;
    case Band::excited: return n_e;
  }
  throw std::logic_error("bad band");
}

std::int64_t FockState::operator[](Band b) const {
  return const_cast<FockState&>(*this)[b];
}

std::size_t FockBasis::dimension(std::int64_t m) {
  if (m < 0) return 0;
  const auto mm = static_cast<std::size_t>(m);
  return (mm + 2) * (mm + 1) / 2;
}

FockBasis::FockBasis(std::int64_t m) : m_(m) {
  if (m < 0) throw std::invalid_argument("particle number must be non-negative");
  states_.reserve(dimension(m));
  for (std::int64_t k = 0; k <= m; ++k)
    for (std::int64_t r = k; r >= 0; --r) states_.push_back({m - k, r, k - r});
}

std::optional<std::size_t> FockBasis::index(const FockState& s) const {
  if (s.n_g < 0 || s.n_r < 0 || s.n_e < 0 || s.total() != m_) return std::nullopt;
  // k' < k excitations contribute k' + 1 states each
  const std::int64_t k = s.n_r + s.n_e;
  return static_cast<std::size_t>(k * (k + 1) / 2 + s.n_e);
}

FockBasis enumerate_basis(std::int64_t m) { return FockBasis(m); }

std::optional<Hop> hopping_amplitude(const FockState& src, Band from, Band to) {
  if (src[from] <= 0) return std::nullopt;
  const double amp = std::sqrt(static_cast<double>(src[from]));
  FockState dst = src;
  dst[from] -= 1;
  if (from == to) return Hop{src, amp * amp};
  dst[to] += 1;
  return Hop{dst, amp * std::sqrt(static_cast<double>(dst[to]))};
}

Complex diagonal_energy(const FockState& s, const ModelParams& p) {
  const auto ng = static_cast<double>(s.n_g);
  const auto nr = static_cast<double>(s.n_r);
  const auto ne = static_cast<double>(s.n_e);
  return {p.delta * ng + 0.5 * p.u * nr * (nr - 1.0),
          -p.gamma_r * nr - p.gamma_e * ne};
}

}  // namespace rydeit
