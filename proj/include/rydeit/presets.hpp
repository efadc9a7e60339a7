#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rydeit/sweep.hpp"

namespace rydeit {

/// Names accepted by preset(): fig2, fig2-u, fig2-m, fig3, fig4, relaxmap.
std::vector<std::string> preset_names();

/// Spec JSON of a built-in preset; throws std::invalid_argument for an
/// unknown name.
nlohmann::json preset_json(const std::string& name);

SweepSpec preset(const std::string& name);

}  // namespace rydeit
