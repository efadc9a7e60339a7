#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rydeit/presets.hpp"
#include "rydeit/sweep.hpp"
#include "rydeit/validation.hpp"

namespace {

constexpr int kExitFailedRows = 1;
constexpr int kExitUsage = 2;

struct SharedFlags {
  std::optional<int> jobs;
  std::vector<std::string> overrides;
  std::string format;
  std::string out;
};

void add_shared(CLI::App* cmd, SharedFlags& f) {
  cmd->add_option("--jobs,-j", f.jobs, "worker threads (default: RYDEIT_JOBS or hardware)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--set", f.overrides, "override a base parameter, name=value");
  cmd->add_option("--format", f.format, "csv or json (default: from spec)")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--out,-o", f.out, "output file (default: stdout)");
}

int emit(rydeit::SweepSpec spec, const SharedFlags& f) {
  for (const auto& o : f.overrides) rydeit::apply_override(spec, o);
  // Overrides can move the base point outside the valid domain.
  spec = rydeit::parse_sweep_spec(rydeit::to_json(spec));
  if (f.jobs) spec.jobs = f.jobs;
  if (!f.format.empty())
    spec.format = f.format == "json" ? rydeit::OutputFormat::json : rydeit::OutputFormat::csv;
  if (!f.out.empty()) spec.output_path = f.out;

  const rydeit::SweepResult result = rydeit::run_sweep(spec);
  if (spec.output_path) {
    rydeit::write_result(result, *spec.output_path, spec.format);
  } else if (spec.format == rydeit::OutputFormat::csv) {
    rydeit::write_csv(result, std::cout);
  } else {
    std::cout << rydeit::to_json(result).dump(2) << '\n';
  }
  for (const auto& w : result.warnings) std::cerr << "warning: " << w << '\n';
  if (result.any_failed()) {
    std::size_t failed = 0;
    for (const auto& r : result.rows) failed += r.status == rydeit::RowStatus::failed;
    std::cerr << failed << " of " << result.rows.size() << " points failed\n";
    return kExitFailedRows;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Susceptibility of driven three-band bosons with a Rydberg band"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(rydeit::kCodeVersion));

  SharedFlags sweep_flags;
  std::string spec_path;
  auto* sweep = app.add_subcommand("sweep", "run a sweep described by a JSON spec");
  sweep->add_option("spec", spec_path, "spec file")->required()->check(CLI::ExistingFile);
  add_shared(sweep, sweep_flags);

  SharedFlags preset_flags;
  std::string preset_name;
  bool print_spec = false;
  auto* preset = app.add_subcommand("preset", "run a built-in figure preset");
  preset->add_option("name", preset_name, "preset name")
      ->required()
      ->check(CLI::IsMember(rydeit::preset_names()));
  preset->add_flag("--print-spec", print_spec, "print the preset spec JSON and exit");
  add_shared(preset, preset_flags);

  std::string level = "fast";
  std::string validate_out;
  auto* validate = app.add_subcommand("validate", "run the invariant suites");
  validate->add_option("--level", level, "fast or full")->check(CLI::IsMember({"fast", "full"}));
  validate->add_option("--out,-o", validate_out, "report file (default: stdout)");

  std::int64_t m_min = 1;
  std::int64_t m_max = 1000;
  std::vector<std::string> null_overrides;
  bool null_scan = false;
  auto* nullref = app.add_subcommand(
      "nullrefraction", "find the M minimising |Re chi^(2)| at zero detuning (blockade path)");
  nullref->add_option("--m-min", m_min, "smallest M")->check(CLI::PositiveNumber);
  nullref->add_option("--m-max", m_max, "largest M")->check(CLI::PositiveNumber);
  nullref->add_option("--set", null_overrides, "override a parameter, name=value");
  nullref->add_flag("--scan", null_scan, "include the full scan in the output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*sweep) {
      std::ifstream in(spec_path);
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("cannot parse spec: ") + e.what());
      }
      return emit(rydeit::parse_sweep_spec(j), sweep_flags);
    }
    if (*preset) {
      if (print_spec) {
        std::cout << rydeit::preset_json(preset_name).dump(2) << '\n';
        return 0;
      }
      return emit(rydeit::preset(preset_name), preset_flags);
    }
    if (*validate) {
      const auto report = rydeit::run_validation(level == "full" ? rydeit::ValidationLevel::full
                                                                 : rydeit::ValidationLevel::fast);
      const std::string text = report.to_json().dump(2);
      if (validate_out.empty()) {
        std::cout << text << '\n';
      } else {
        std::ofstream(validate_out) << text << '\n';
      }
      return report.passed() ? 0 : kExitFailedRows;
    }
    if (*nullref) {
      rydeit::SweepSpec spec;
      spec.base = rydeit::preset("fig4").base;
      for (const auto& o : null_overrides) rydeit::apply_override(spec, o);
      rydeit::validate(spec.base, rydeit::SolverPath::blockade);
      const auto r = rydeit::find_null_refraction(spec.base, m_min, m_max);
      nlohmann::json out = {{"m", r.m}, {"re_chi2", r.re_chi2}, {"crossing", r.crossing}};
      if (r.crossing) out["bracket"] = {r.bracket_lo, r.bracket_lo + 1};
      if (null_scan) {
        out["scan"] = nlohmann::json::array();
        for (const auto& [m, v] : r.scan) out["scan"].push_back({m, v});
      }
      std::cout << out.dump(2) << '\n';
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailedRows;
  }
  return kExitUsage;
}
