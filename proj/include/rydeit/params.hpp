#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rydeit {

using Complex = std::complex<double>;
inline constexpr Complex kI{0.0, 1.0};

/// Physical parameters of the dressed three-band model, all in recoil energies
/// (hbar = 1). The dressing convention fixes E_R - omega_c = E_e = 0.
struct ModelParams {
  double omega_p = 0.0;  ///< probe Rabi frequency (g <-> e)
  double omega_c = 1.0;  ///< coupling Rabi frequency (e <-> R)
  double gamma_e = 0.0;  ///< excited-band decay
  double gamma_r = 0.0;  ///< interaction-band decay
  double delta = 0.0;    ///< probe detuning E_g - omega_p
  double u = 0.0;        ///< two-body interaction in the R band
  std::int64_t m = 1;    ///< particle number

  bool operator==(const ModelParams&) const = default;
};

/// Which solver path a parameter set is being checked for.
enum class SolverPath { exact, blockade };

/// Throws std::invalid_argument when the parameters violate the hard
/// invariants of the requested path. The exact path admits omega_c = 0.
void validate(const ModelParams& params, SolverPath path);

/// Soft violations (e.g. omega_p not small against omega_c on the
/// perturbative path). Empty when nothing to report.
std::vector<std::string> warnings(const ModelParams& params, SolverPath path);

/// Parameter names accepted by sweeps: omega_p, omega_c, gamma_e, gamma_r,
/// delta, u, m.
bool is_param_name(std::string_view name);

/// Returns params with the named field set to value. m is rounded to the
/// nearest integer. Throws std::invalid_argument for unknown names.
ModelParams with_param(ModelParams params, std::string_view name, double value);

double get_param(const ModelParams& params, std::string_view name);

}  // namespace rydeit
