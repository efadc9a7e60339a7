#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace rydeit {

enum class ValidationLevel { fast, full };

struct CheckResult {
  std::string name;
  double tolerance = 0.0;
  double deviation = 0.0;  ///< worst measured deviation, in the check's own units
  bool passed = false;
  double seconds = 0.0;
  std::string detail;
};

struct ValidationReport {
  ValidationLevel level = ValidationLevel::fast;
  std::vector<CheckResult> checks;

  bool passed() const;
  nlohmann::json to_json() const;
};

/// Runs the invariant suites. Never throws for a failing check; an exception
/// inside a check is recorded as a failure with its message.
ValidationReport run_validation(ValidationLevel level);

}  // namespace rydeit
