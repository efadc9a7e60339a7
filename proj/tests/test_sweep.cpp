#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "rydeit/blockade.hpp"
#include "rydeit/presets.hpp"
#include "rydeit/sweep.hpp"

using namespace rydeit;
using nlohmann::json;

namespace {

json blockade_spec() {
  return {{"solver", "blockade"},
          {"params", {{"omega_p", 0.1}, {"omega_c", 1.0}, {"gamma_e", 2.0}, {"m", 10}}},
          {"axis", "delta"},
          {"grid", {{"start", -2.0}, {"stop", 2.0}, {"count", 9}}}};
}

std::string csv_of(const SweepResult& r) {
  std::ostringstream os;
  write_csv(r, os);
  return os.str();
}

}  // namespace

TEST_CASE("grid expansion") {
  const GridSpec lin = parse_grid({{"start", 0.0}, {"stop", 1.0}, {"count", 5}});
  CHECK(lin.values == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  const GridSpec lg = parse_grid({{"start", 1.0}, {"stop", 100.0}, {"count", 3}, {"spacing", "log"}});
  REQUIRE(lg.values.size() == 3);
  CHECK(lg.values[1] == doctest::Approx(10.0));
  CHECK(parse_grid({{"start", 2.0}, {"stop", 2.0}, {"count", 1}}).values == std::vector<double>{2.0});
  CHECK(parse_grid(json::array({3.0, 1.0})).values == std::vector<double>{3.0, 1.0});

  CHECK_THROWS_AS(parse_grid({{"start", 1.0}, {"stop", 0.0}, {"count", 3}}), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid({{"start", 0.0}, {"stop", 1.0}, {"count", 0}}), std::invalid_argument);
  CHECK_THROWS_AS(parse_grid({{"start", 0.0}, {"stop", 1.0}, {"count", 3}, {"spacing", "log"}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_grid(json::array()), std::invalid_argument);
}

TEST_CASE("spec validation happens before computing") {
  CHECK_NOTHROW(parse_sweep_spec(blockade_spec()));

  json bad = blockade_spec();
  bad["axis"] = "theta";
  CHECK_THROWS_AS(parse_sweep_spec(bad), std::invalid_argument);
  bad = blockade_spec();
  bad["solver"] = "magic";
  CHECK_THROWS_AS(parse_sweep_spec(bad), std::invalid_argument);
  bad = blockade_spec();
  bad["params"]["gamma_r"] = -1.0;
  CHECK_THROWS_AS(parse_sweep_spec(bad), std::invalid_argument);
  bad = blockade_spec();
  bad["params"]["omega_c"] = 0.0;
  CHECK_THROWS_AS(parse_sweep_spec(bad), std::invalid_argument);
  bad = blockade_spec();
  bad["outputs"] = {"chi3"};
  CHECK_THROWS_AS(parse_sweep_spec(bad), std::invalid_argument);
  bad = blockade_spec();
  bad["axis"] = {"delta", "u"};
  CHECK_THROWS_AS(parse_sweep_spec(bad), std::invalid_argument);
  bad = blockade_spec();
  bad.erase("grid");
  CHECK_THROWS_AS(parse_sweep_spec(bad), std::invalid_argument);
}

TEST_CASE("rows follow the grid and match direct calls") {
  SweepSpec spec = parse_sweep_spec(blockade_spec());
  const SweepResult r = run_sweep(spec);
  REQUIRE(r.rows.size() == 9);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    CHECK(r.rows[i].axis_values[0] == spec.grids[0].values[i]);
    CHECK(r.rows[i].status == RowStatus::ok);
    ModelParams p = spec.base;
    p.delta = spec.grids[0].values[i];
    CHECK(r.rows[i].chi1 == blockade_susceptibility(p, 1));
    CHECK(r.rows[i].chi2 == blockade_susceptibility(p, 2));
  }
}

TEST_CASE("serial and threaded runs are identical and reruns are byte-identical") {
  json j = blockade_spec();
  j["axis"] = {"m", "delta"};
  j.erase("grid");
  j["grids"] = {json::array({1, 2, 7, 40}), {{"start", -1.0}, {"stop", 1.0}, {"count", 7}}};
  j["outputs"] = {"chi1", "chi2", "ratio", "limits", "relaxation"};
  SweepSpec spec = parse_sweep_spec(j);
  spec.jobs = 1;
  const std::string serial = csv_of(run_sweep(spec));
  spec.jobs = 4;
  const SweepResult threaded = run_sweep(spec);
  CHECK(csv_of(threaded) == serial);
  CHECK(csv_of(run_sweep(spec)) == serial);
  CHECK(to_json(threaded, false).dump() == to_json(run_sweep(spec), false).dump());
  CHECK(threaded.rows.size() == 28);
  CHECK(threaded.rows[7].axis_values == std::vector<double>{2.0, -1.0});
}

TEST_CASE("csv layout") {
  json j = blockade_spec();
  j["outputs"] = {"chi1", "chi2", "eigenvalue", "ratio"};
  const SweepResult r = run_sweep(parse_sweep_spec(j));
  const std::string text = csv_of(r);
  std::istringstream is(text);
  std::string header, first;
  std::getline(is, header);
  std::getline(is, first);
  CHECK(header ==
        "delta,re_chi1,im_chi1,re_chi2,im_chi2,re_eigenvalue,im_eigenvalue,residual,ratio_inf,status");
  CHECK(first.rfind("-2,", 0) == 0);
  CHECK(first.substr(first.size() - 3) == ",ok");
  // Round trip of the printed imaginary part.
  const auto c2 = first.find(',', first.find(',') + 1);
  const auto c3 = first.find(',', c2 + 1);
  CHECK(std::stod(first.substr(c2 + 1, c3 - c2 - 1)) == r.rows[0].chi1.imag());
}

TEST_CASE("json result") {
  const SweepResult r = run_sweep(parse_sweep_spec(blockade_spec()));
  const json j = to_json(r);
  CHECK(j["schema_version"] == kSchemaVersion);
  CHECK(j["provenance"]["code_version"] == kCodeVersion);
  CHECK(j["provenance"].contains("generated_at"));
  CHECK_FALSE(to_json(r, false)["provenance"].contains("generated_at"));
  CHECK(j["rows"].size() == 9);
  CHECK(j["rows"][0]["status"] == "ok");
  CHECK(j["rows"][0]["axes"]["delta"] == -2.0);
  // The echoed spec parses back to the same sweep.
  const SweepSpec again = parse_sweep_spec(j["spec"]);
  CHECK(csv_of(run_sweep(again)) == csv_of(r));
}

TEST_CASE("failures are isolated per row") {
  json j = {{"solver", "exact"},
            {"params", {{"omega_p", 0.1}, {"gamma_e", 1.0}, {"u", 2.0}}},
            {"axis", "m"},
            {"grid", json::array({1, 300, 2})}};
  const SweepResult r = run_sweep(parse_sweep_spec(j));
  REQUIRE(r.rows.size() == 3);
  CHECK(r.rows[0].status == RowStatus::ok);
  CHECK(r.rows[1].status == RowStatus::failed);
  CHECK(r.rows[1].status_string().rfind("failed(", 0) == 0);
  CHECK(std::isnan(r.rows[1].chi1.real()));
  CHECK(r.rows[2].status == RowStatus::ok);
  CHECK(r.any_failed());
  CHECK(csv_of(r).find("failed(") != std::string::npos);
}

TEST_CASE("singular points and the opt-in perturbation") {
  // (i Gamma_R + delta)(i Gamma_e + delta) = Omega_c^2 at delta = 1.
  json j = {{"solver", "blockade"},
            {"params", {{"omega_p", 0.01}, {"omega_c", 1.0}, {"m", 3}}},
            {"axis", "delta"},
            {"grid", json::array({0.5, 1.0})}};
  const SweepResult plain = run_sweep(parse_sweep_spec(j));
  CHECK(plain.rows[0].status == RowStatus::ok);
  CHECK(plain.rows[1].status == RowStatus::failed);
  CHECK(plain.decisions.empty());

  j["perturb_singular"] = true;
  const SweepResult fixed = run_sweep(parse_sweep_spec(j));
  CHECK(fixed.rows[1].status == RowStatus::perturbed);
  CHECK(fixed.rows[1].status_string().rfind("perturbed(", 0) == 0);
  CHECK(std::isfinite(fixed.rows[1].chi1.imag()));
  REQUIRE(fixed.decisions.size() == 1);
  CHECK(fixed.decisions[0].rfind("row 1: ", 0) == 0);
  CHECK_FALSE(fixed.any_failed());
}

TEST_CASE("warnings and closed-form solver") {
  json j = blockade_spec();
  j["params"]["omega_p"] = 1.5;
  const SweepResult r = run_sweep(parse_sweep_spec(j));
  CHECK(r.warnings.size() == 1);

  json c = blockade_spec();
  c["solver"] = "closed_form";
  c["outputs"] = {"chi1", "chi2", "limits"};
  const SweepResult cf = run_sweep(parse_sweep_spec(c));
  for (const auto& row : cf.rows) {
    ModelParams p = parse_sweep_spec(c).base;
    p.delta = row.axis_values[0];
    const ChiLimits lim = chi_infinite(p);
    CHECK(row.chi1 == lim.first);
    CHECK(row.chi2 == lim.second);
    CHECK(row.aux[0] == chi_single(p).real());
  }
}

TEST_CASE("relaxation outputs and boundary") {
  json j = {{"solver", "closed_form"},
            {"params", {{"gamma_r", 2.0}, {"delta", 1.0}}},
            {"axis", {"gamma_e", "omega_c"}},
            {"grids", {{{"start", 0.1}, {"stop", 4.0}, {"count", 20}},
                       {{"start", 0.05}, {"stop", 2.0}, {"count", 20}}}},
            {"outputs", {"relaxation"}}};
  const SweepResult r = run_sweep(parse_sweep_spec(j));
  CHECK(r.aux_columns == std::vector<std::string>{"exponent_pp", "exponent_mm", "regular"});
  CHECK_FALSE(r.relaxation_boundary.empty());
  CHECK(std::isnan(r.rows[0].chi1.real()));
  CHECK(to_json(r).contains("relaxation_boundary"));
}

TEST_CASE("overrides") {
  SweepSpec spec = parse_sweep_spec(blockade_spec());
  apply_override(spec, "gamma_r=0.25");
  CHECK(spec.base.gamma_r == 0.25);
  apply_override(spec, "m=12");
  CHECK(spec.base.m == 12);
  CHECK_THROWS_AS(apply_override(spec, "gamma_r"), std::invalid_argument);
  CHECK_THROWS_AS(apply_override(spec, "gamma_r=abc"), std::invalid_argument);
  CHECK_THROWS_AS(apply_override(spec, "theta=1"), std::invalid_argument);
}

TEST_CASE("presets parse") {
  for (const auto& name : preset_names()) {
    const SweepSpec s = preset(name);
    CHECK_FALSE(s.axes.empty());
  }
  CHECK(preset("fig2").base.m == 50);
  CHECK(preset("fig4").grids[0].values == std::vector<double>{1, 2, 65, 1000});
  CHECK(preset("fig3").wants(Observable::ratio));
  CHECK_THROWS_AS(preset("fig9"), std::invalid_argument);
}

TEST_CASE("null-refraction scan") {
  const ModelParams p = preset("fig4").base;
  const NullRefraction r = find_null_refraction(p, 1, 1000);
  CHECK(r.crossing);
  CHECK(r.m == 65);
  CHECK(r.bracket_lo == 65);
  CHECK(r.scan.size() == 1000);
  CHECK(r.scan[1].second > 0.0);
  CHECK(r.scan[999].second < 0.0);

  const NullRefraction none = find_null_refraction(p, 2, 30);
  CHECK_FALSE(none.crossing);
  CHECK(none.m >= 2);

  ModelParams detuned = p;
  detuned.delta = 0.1;
  CHECK_THROWS_AS(find_null_refraction(detuned, 1, 10), std::invalid_argument);
  CHECK_THROWS_AS(find_null_refraction(p, 5, 4), std::invalid_argument);
}
