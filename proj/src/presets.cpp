#include "rydeit/presets.hpp"

#include <stdexcept>

namespace rydeit {

using nlohmann::json;

namespace {

// Decay rates and drives of the absorption/interaction figure.
json fig2_params() {
  return {{"omega_p", 0.5}, {"omega_c", 1.0}, {"gamma_e", 10.0},
          {"gamma_r", 0.5}, {"delta", 0.0},   {"u", 0.0},
          {"m", 50}};
}

json fig34_params(double gamma_e) {
  return {{"omega_p", 0.1}, {"omega_c", 1.0}, {"gamma_e", gamma_e},
          {"gamma_r", 0.0}, {"delta", 0.0},   {"u", 0.0},
          {"m", 1}};
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"fig2", "fig2-u", "fig2-m", "fig3", "fig4", "relaxmap"};
}

json preset_json(const std::string& name) {
  if (name == "fig2") {
    // The figure only names U = 0 and the saturated regime; the U grid is a
    // log ladder up to clear saturation.
    return {{"solver", "exact"},
            {"params", fig2_params()},
            {"axis", {"u", "delta"}},
            {"grids", {json::array({0.0, 1.0, 10.0, 100.0, 1000.0}),
                       {{"start", -6.0}, {"stop", 6.0}, {"count", 49}}}},
            {"outputs", {"chi1", "chi2", "eigenvalue"}}};
  }
  if (name == "fig2-u") {
    return {{"solver", "exact"},
            {"params", fig2_params()},
            {"axis", "u"},
            {"grid", json::array({0.0, 0.1, 0.3, 1.0, 3.0, 10.0, 30.0, 100.0, 300.0, 1000.0})},
            {"outputs", {"chi1", "chi2", "eigenvalue"}}};
  }
  if (name == "fig2-m") {
    // At U = 0 chi^(1) does not depend on M, so the M dependence is shown at
    // finite interaction.
    json p = fig2_params();
    p["u"] = 10.0;
    return {{"solver", "exact"},
            {"params", p},
            {"axis", "m"},
            {"grid", json::array({1, 2, 5, 10, 20, 30, 40, 50})},
            {"outputs", {"chi1", "chi2", "eigenvalue"}}};
  }
  if (name == "fig3") {
    return {{"solver", "blockade"},
            {"params", fig34_params(2.0)},
            {"axis", {"gamma_e", "m"}},
            {"grids", {json::array({0.5, 1.0, 2.0, 5.0, 10.0}),
                       {{"start", 1.0}, {"stop", 1000.0}, {"count", 40}, {"spacing", "log"}}}},
            {"outputs", {"chi1", "chi2", "ratio"}},
            {"perturb_singular", true}};
  }
  if (name == "fig4") {
    return {{"solver", "blockade"},
            {"params", fig34_params(2.0)},
            {"axis", {"m", "delta"}},
            {"grids", {json::array({1, 2, 65, 1000}),
                       {{"start", -6.0}, {"stop", 6.0}, {"count", 241}}}},
            {"outputs", {"chi1", "chi2", "limits"}}};
  }
  if (name == "relaxmap") {
    json p = fig34_params(2.0);
    p["gamma_r"] = 2.0;
    p["delta"] = 1.0;
    return {{"solver", "closed_form"},
            {"params", p},
            {"axis", {"gamma_e", "omega_c"}},
            {"grids", {{{"start", 0.1}, {"stop", 10.0}, {"count", 100}},
                       {{"start", 0.05}, {"stop", 5.0}, {"count", 100}}}},
            {"outputs", {"relaxation"}}};
  }
  throw std::invalid_argument("unknown preset '" + name + "'");
}

SweepSpec preset(const std::string& name) { return parse_sweep_spec(preset_json(name)); }

}  // namespace rydeit
