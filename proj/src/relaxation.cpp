#include "rydeit/relaxation.hpp"

#include <cmath>
#include <stdexcept>

namespace rydeit {

double relaxation_d(std::int64_t n, const ModelParams& p) {
  const double dg = p.gamma_e - p.gamma_r;
  const double arg = dg * dg - 4.0 * p.omega_c * p.omega_c * static_cast<double>(n + 1);
  return arg > 0.0 ? std::sqrt(arg) : 0.0;
}

RelaxationReport relaxation_report(const ModelParams& p) {
  const double d0 = relaxation_d(kRelaxationMode, p);
  const double d1 = relaxation_d(kRelaxationMode + 1, p);
  RelaxationReport r;
  r.exponent_pp = 0.5 * (d0 + d1) - p.gamma_e;
  r.exponent_mm = 0.5 * (d0 - d1) - p.gamma_e;
  r.regular = r.max_exponent() < 0.0;
  return r;
}

double RelaxationMap::regular_fraction() const {
  if (cells.empty()) return 0.0;
  std::size_t n = 0;
  for (const auto& c : cells) n += c.regular ? 1 : 0;
  return static_cast<double>(n) / static_cast<double>(cells.size());
}

bool is_relaxation_axis(const std::string& name) {
  return name == "gamma_e" || name == "gamma_r" || name == "omega_c";
}

RelaxationMap relaxation_map(const ModelParams& params, const std::string& axis1,
                             const std::string& axis2, const std::vector<double>& grid1,
                             const std::vector<double>& grid2) {
  if (!is_relaxation_axis(axis1) || !is_relaxation_axis(axis2))
    throw std::invalid_argument("relaxation axes must be gamma_e, gamma_r or omega_c");
  if (axis1 == axis2) throw std::invalid_argument("relaxation axes must differ");
  if (grid1.empty() || grid2.empty()) throw std::invalid_argument("empty relaxation grid");

  RelaxationMap map{axis1, axis2, grid1, grid2, {}, {}};
  map.cells.reserve(grid1.size() * grid2.size());
  for (double a : grid1)
    for (double b : grid2)
      map.cells.push_back(relaxation_report(with_param(with_param(params, axis1, a), axis2, b)));

  for (std::size_t i = 0; i < grid1.size(); ++i) {
    for (std::size_t j = 0; j < grid2.size(); ++j) {
      const double f0 = map.at(i, j).max_exponent();
      if (f0 == 0.0) {
        map.boundary.emplace_back(grid1[i], grid2[j]);
        continue;
      }
      if (j + 1 == grid2.size()) continue;
      const double f1 = map.at(i, j + 1).max_exponent();
      if (f1 != 0.0 && (f0 < 0.0) != (f1 < 0.0)) {
        const double t = f0 / (f0 - f1);
        map.boundary.emplace_back(grid1[i], grid2[j] + t * (grid2[j + 1] - grid2[j]));
      }
    }
  }
  return map;
}

}  // namespace rydeit
