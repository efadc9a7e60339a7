#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rydeit/params.hpp"

namespace rydeit {

/// D(n) = Re sqrt((Gamma_e - Gamma_R)^2 - 4 Omega_c^2 (n+1)).
double relaxation_d(std::int64_t n, const ModelParams& params);

/// Growth exponents of the two transient terms that can turn positive,
/// evaluated at n = 2 where both are maximal:
///   exponent_pp = Im(E_{n+1}^+ - E_n^-) = (D(n) + D(n+1))/2 - Gamma_e
///   exponent_mm = Im(E_{n+1}^- - E_n^-) = (D(n) - D(n+1))/2 - Gamma_e
struct RelaxationReport {
  double exponent_pp = 0.0;
  double exponent_mm = 0.0;
  bool regular = false;  ///< both exponents negative

  double max_exponent() const { return exponent_pp > exponent_mm ? exponent_pp : exponent_mm; }
};

inline constexpr std::int64_t kRelaxationMode = 2;

RelaxationReport relaxation_report(const ModelParams& params);

/// Dense grid over two of {gamma_e, gamma_r, omega_c}; cells are row-major
/// (grid1 outer). `boundary` holds the points where max_exponent crosses 0,
/// linearly interpolated along axis2 within each row.
struct RelaxationMap {
  std::string axis1, axis2;
  std::vector<double> grid1, grid2;
  std::vector<RelaxationReport> cells;
  std::vector<std::pair<double, double>> boundary;

  const RelaxationReport& at(std::size_t i, std::size_t j) const {
    return cells[i * grid2.size() + j];
  }
  double regular_fraction() const;
};

bool is_relaxation_axis(const std::string& name);

RelaxationMap relaxation_map(const ModelParams& params, const std::string& axis1,
                             const std::string& axis2, const std::vector<double>& grid1,
                             const std::vector<double>& grid2);

}  // namespace rydeit
