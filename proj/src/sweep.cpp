#include "rydeit/sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iterator>
#include <ostream>
#include <stdexcept>

#include "rydeit/blockade.hpp"
#include "rydeit/errors.hpp"
#include "rydeit/parallel.hpp"
#include "rydeit/relaxation.hpp"

namespace rydeit {

using nlohmann::json;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kSingularPerturbation = 1e-7;

SolverKind parse_solver(const std::string& s) {
  if (s == "exact") return SolverKind::exact;
  if (s == "blockade") return SolverKind::blockade;
  if (s == "closed_form") return SolverKind::closed_form;
  throw std::invalid_argument("unknown solver '" + s + "' (expected exact, blockade, closed_form)");
}

Observable parse_observable(const std::string& s) {
  if (s == "chi1") return Observable::chi1;
  if (s == "chi2") return Observable::chi2;
  if (s == "eigenvalue") return Observable::eigenvalue;
  if (s == "relaxation") return Observable::relaxation;
  if (s == "ratio") return Observable::ratio;
  if (s == "limits") return Observable::limits;
  throw std::invalid_argument("unknown output '" + s + "'");
}

ModelParams parse_params(const json& j, ModelParams p) {
  if (!j.is_object()) throw std::invalid_argument("'params' must be an object");
  for (const auto& [key, value] : j.items()) {
    if (!is_param_name(key)) throw std::invalid_argument("unknown parameter '" + key + "'");
    if (!value.is_number()) throw std::invalid_argument("parameter '" + key + "' must be a number");
    p = with_param(p, key, value.get<double>());
  }
  return p;
}

json params_json(const ModelParams& p) {
  return {{"omega_p", p.omega_p}, {"omega_c", p.omega_c}, {"gamma_e", p.gamma_e},
          {"gamma_r", p.gamma_r}, {"delta", p.delta},     {"u", p.u},
          {"m", p.m}};
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> aux_columns_for(const SweepSpec& spec) {
  std::vector<std::string> cols;
  for (Observable o : spec.outputs) {
    switch (o) {
      case Observable::eigenvalue:
        cols.insert(cols.end(), {"re_eigenvalue", "im_eigenvalue", "residual"});
        break;
      case Observable::ratio:
        cols.emplace_back("ratio_inf");
        break;
      case Observable::limits:
        cols.insert(cols.end(), {"re_chi1_single", "im_chi1_single", "re_chi1_inf", "im_chi1_inf",
                                 "re_chi2_inf", "im_chi2_inf"});
        break;
      case Observable::relaxation:
        cols.insert(cols.end(), {"exponent_pp", "exponent_mm", "regular"});
        break;
      case Observable::chi1:
      case Observable::chi2:
        break;
    }
  }
  return cols;
}

struct PointOutcome {
  SweepRow row;
  std::vector<std::string> decisions;
  std::vector<std::string> warnings;
  Complex eigenvalue{kNaN, kNaN};
  double residual = kNaN;
};

template <class Fn>
auto guarded(Fn&& fn) -> std::optional<decltype(fn())> {
  try {
    return fn();
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

PointOutcome evaluate_point(const SweepSpec& spec, const ModelParams& p) {
  PointOutcome out;
  SweepRow& row = out.row;

  switch (spec.solver) {
    case SolverKind::exact: {
      const ExactPoint pt = exact_point(p, spec.exact);
      if (!pt.ok) {
        row.status = RowStatus::failed;
        row.detail = pt.error;
        break;
      }
      row.chi1 = pt.chi1;
      row.chi2 = pt.chi2;
      out.eigenvalue = pt.eigenvalue;
      out.residual = pt.residual;
      if (pt.degenerate) out.decisions.emplace_back("degenerate top imaginary part; larger real part selected");
      break;
    }
    case SolverKind::blockade: {
      out.warnings = warnings(p, SolverPath::blockade);
      auto solve = [&](const ModelParams& q) {
        const BlockadeState state = assemble_state(q, q.m);
        row.chi1 = blockade_susceptibility(state, 1);
        row.chi2 = blockade_susceptibility(state, 2);
      };
      try {
        solve(p);
      } catch (const SingularityError& e) {
        if (!spec.perturb_singular) {
          row.status = RowStatus::failed;
          row.detail = e.what();
          break;
        }
        ModelParams q = p;
        q.omega_c *= 1.0 + kSingularPerturbation;
        try {
          solve(q);
          row.status = RowStatus::perturbed;
          row.detail = std::string("omega_c scaled by 1+1e-7 after: ") + e.what();
          out.decisions.push_back(row.detail);
        } catch (const std::exception& e2) {
          row.status = RowStatus::failed;
          row.detail = e2.what();
        }
      } catch (const std::exception& e) {
        row.status = RowStatus::failed;
        row.detail = e.what();
      }
      break;
    }
    case SolverKind::closed_form: {
      try {
        const ChiLimits lim = chi_infinite(p);
        row.chi1 = lim.first;
        row.chi2 = lim.second;
      } catch (const std::exception& e) {
        row.status = RowStatus::failed;
        row.detail = e.what();
      }
      break;
    }
  }

  if (!spec.wants(Observable::chi1)) row.chi1 = {kNaN, kNaN};
  if (!spec.wants(Observable::chi2)) row.chi2 = {kNaN, kNaN};

  for (Observable o : spec.outputs) {
    switch (o) {
      case Observable::eigenvalue:
        row.aux.insert(row.aux.end(), {out.eigenvalue.real(), out.eigenvalue.imag(), out.residual});
        break;
      case Observable::ratio: {
        const auto lim = guarded([&] { return chi_infinite(p); });
        row.aux.push_back(lim ? row.chi1.imag() / lim->first.imag() : kNaN);
        break;
      }
      case Observable::limits: {
        const auto single = guarded([&] { return chi_single(p); });
        const auto lim = guarded([&] { return chi_infinite(p); });
        const Complex s = single.value_or(Complex{kNaN, kNaN});
        const ChiLimits l = lim.value_or(ChiLimits{{kNaN, kNaN}, {kNaN, kNaN}});
        row.aux.insert(row.aux.end(), {s.real(), s.imag(), l.first.real(), l.first.imag(),
                                       l.second.real(), l.second.imag()});
        break;
      }
      case Observable::relaxation: {
        const RelaxationReport r = relaxation_report(p);
        row.aux.insert(row.aux.end(), {r.exponent_pp, r.exponent_mm, r.regular ? 1.0 : 0.0});
        break;
      }
      case Observable::chi1:
      case Observable::chi2:
        break;
    }
  }
  return out;
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void validate_point(const SweepSpec& spec, const ModelParams& p) {
  switch (spec.solver) {
    case SolverKind::exact:
      validate(p, SolverPath::exact);
      break;
    case SolverKind::blockade:
      validate(p, SolverPath::blockade);
      break;
    case SolverKind::closed_form:
      validate(p, SolverPath::exact);
      break;
  }
}

std::vector<std::vector<double>> grid_points(const SweepSpec& spec) {
  std::vector<std::vector<double>> pts;
  if (spec.axes.size() == 1) {
    for (double a : spec.grids[0].values) pts.push_back({a});
  } else {
    for (double a : spec.grids[0].values)
      for (double b : spec.grids[1].values) pts.push_back({a, b});
  }
  return pts;
}

ModelParams point_params(const SweepSpec& spec, const std::vector<double>& values) {
  ModelParams p = spec.base;
  for (std::size_t i = 0; i < values.size(); ++i) p = with_param(p, spec.axes[i], values[i]);
  return p;
}

}  // namespace

bool SweepSpec::wants(Observable o) const {
  return std::find(outputs.begin(), outputs.end(), o) != outputs.end();
}

std::string to_string(SolverKind s) {
  switch (s) {
    case SolverKind::exact: return "exact";
    case SolverKind::blockade: return "blockade";
    case SolverKind::closed_form: return "closed_form";
  }
  return "?";
}

std::string to_string(Observable o) {
  switch (o) {
    case Observable::chi1: return "chi1";
    case Observable::chi2: return "chi2";
    case Observable::eigenvalue: return "eigenvalue";
    case Observable::relaxation: return "relaxation";
    case Observable::ratio: return "ratio";
    case Observable::limits: return "limits";
  }
  return "?";
}

GridSpec parse_grid(const json& j) {
  GridSpec g;
  if (j.is_array()) {
    if (j.empty()) throw std::invalid_argument("grid list must be non-empty");
    for (const auto& v : j) {
      if (!v.is_number()) throw std::invalid_argument("grid entries must be numbers");
      g.values.push_back(v.get<double>());
    }
    return g;
  }
  if (!j.is_object()) throw std::invalid_argument("grid must be a list or {start, stop, count}");
  if (!j.contains("start") || !j.contains("stop") || !j.contains("count"))
    throw std::invalid_argument("grid range needs start, stop and count");
  const double start = j.at("start").get<double>();
  const double stop = j.at("stop").get<double>();
  const int count = j.at("count").get<int>();
  const std::string spacing = j.value("spacing", std::string("linear"));
  if (count < 1) throw std::invalid_argument("grid count must be >= 1");
  if (start > stop) throw std::invalid_argument("grid start must not exceed stop");
  if (spacing != "linear" && spacing != "log")
    throw std::invalid_argument("grid spacing must be linear or log");
  g.start = start;
  g.stop = stop;
  g.count = count;
  g.log_spacing = spacing == "log";
  if (g.log_spacing && start <= 0.0) throw std::invalid_argument("log grid needs start > 0");
  for (int i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
    g.values.push_back(g.log_spacing ? start * std::pow(stop / start, t) : start + t * (stop - start));
  }
  return g;
}

SweepSpec parse_sweep_spec(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("sweep spec must be a JSON object");
  SweepSpec spec;
  spec.solver = parse_solver(j.value("solver", std::string("exact")));
  if (j.contains("params")) spec.base = parse_params(j.at("params"), spec.base);

  if (!j.contains("axis")) throw std::invalid_argument("sweep spec needs 'axis'");
  const json& axis = j.at("axis");
  if (axis.is_string()) {
    spec.axes = {axis.get<std::string>()};
  } else if (axis.is_array() && (axis.size() == 1 || axis.size() == 2)) {
    for (const auto& a : axis) spec.axes.push_back(a.get<std::string>());
  } else {
    throw std::invalid_argument("'axis' must be a name or a list of one or two names");
  }
  for (const auto& a : spec.axes)
    if (!is_param_name(a)) throw std::invalid_argument("unknown axis '" + a + "'");
  if (spec.axes.size() == 2 && spec.axes[0] == spec.axes[1])
    throw std::invalid_argument("axis pair must name two different parameters");

  if (spec.axes.size() == 1) {
    if (!j.contains("grid")) throw std::invalid_argument("sweep spec needs 'grid'");
    spec.grids = {parse_grid(j.at("grid"))};
  } else {
    if (!j.contains("grids") || !j.at("grids").is_array() || j.at("grids").size() != 2)
      throw std::invalid_argument("an axis pair needs 'grids' with two entries");
    for (const auto& g : j.at("grids")) spec.grids.push_back(parse_grid(g));
  }
  for (std::size_t i = 0; i < spec.axes.size(); ++i) {
    if (spec.axes[i] != "m") continue;
    auto& values = spec.grids[i].values;
    for (auto& v : values) v = std::round(v);
    values.erase(std::unique(values.begin(), values.end()), values.end());
  }

  if (j.contains("outputs")) {
    spec.outputs.clear();
    for (const auto& o : j.at("outputs")) {
      const Observable obs = parse_observable(o.get<std::string>());
      if (!spec.wants(obs)) spec.outputs.push_back(obs);
    }
    if (spec.outputs.empty()) throw std::invalid_argument("'outputs' must be non-empty");
  }
  if (j.contains("output")) {
    const json& out = j.at("output");
    if (out.contains("path")) spec.output_path = out.at("path").get<std::string>();
    const std::string fmt = out.value("format", std::string("csv"));
    if (fmt == "csv") spec.format = OutputFormat::csv;
    else if (fmt == "json") spec.format = OutputFormat::json;
    else throw std::invalid_argument("output format must be csv or json");
  }
  if (j.contains("jobs")) spec.jobs = j.at("jobs").get<int>();
  spec.perturb_singular = j.value("perturb_singular", false);
  if (j.contains("exact")) {
    const json& ex = j.at("exact");
    spec.exact.eigen.dense_limit = ex.value("dense_limit", spec.exact.eigen.dense_limit);
    spec.exact.build.max_dimension = ex.value("max_dimension", spec.exact.build.max_dimension);
    const std::string mode = ex.value("expectation", std::string("right_right"));
    if (mode == "right_right") spec.exact.expectation = Expectation::right_right;
    else if (mode == "biorthogonal") spec.exact.expectation = Expectation::biorthogonal;
    else throw std::invalid_argument("expectation must be right_right or biorthogonal");
  }

  for (const auto& pt : grid_points(spec)) {
    try {
      validate_point(spec, point_params(spec, pt));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(std::string("invalid grid point: ") + e.what());
    }
  }
  return spec;
}

json to_json(const SweepSpec& spec) {
  json j;
  j["solver"] = to_string(spec.solver);
  j["params"] = params_json(spec.base);
  if (spec.axes.size() == 1) j["axis"] = spec.axes[0];
  else j["axis"] = spec.axes;
  auto grid_json = [](const GridSpec& g) -> json {
    if (g.start)
      return {{"start", *g.start}, {"stop", *g.stop}, {"count", *g.count},
              {"spacing", g.log_spacing ? "log" : "linear"}};
    return g.values;
  };
  if (spec.axes.size() == 1) {
    j["grid"] = grid_json(spec.grids[0]);
  } else {
    j["grids"] = json::array({grid_json(spec.grids[0]), grid_json(spec.grids[1])});
  }
  j["outputs"] = json::array();
  for (Observable o : spec.outputs) j["outputs"].push_back(to_string(o));
  json out = {{"format", spec.format == OutputFormat::csv ? "csv" : "json"}};
  if (spec.output_path) out["path"] = *spec.output_path;
  j["output"] = out;
  if (spec.jobs) j["jobs"] = *spec.jobs;
  j["perturb_singular"] = spec.perturb_singular;
  j["exact"] = {{"dense_limit", spec.exact.eigen.dense_limit},
                {"max_dimension", spec.exact.build.max_dimension},
                {"expectation", spec.exact.expectation == Expectation::right_right ? "right_right"
                                                                                    : "biorthogonal"}};
  return j;
}

void apply_override(SweepSpec& spec, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw std::invalid_argument("override must be name=value: " + assignment);
  const std::string name = assignment.substr(0, eq);
  const std::string text = assignment.substr(eq + 1);
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty())
    throw std::invalid_argument("override value is not a number: " + assignment);
  spec.base = with_param(spec.base, name, value);
}

std::string SweepRow::status_string() const {
  switch (status) {
    case RowStatus::ok: return "ok";
    case RowStatus::failed: return "failed(" + detail + ")";
    case RowStatus::perturbed: return "perturbed(" + detail + ")";
  }
  return "?";
}

bool SweepResult::any_failed() const {
  return std::any_of(rows.begin(), rows.end(),
                     [](const SweepRow& r) { return r.status == RowStatus::failed; });
}

SweepResult run_sweep(const SweepSpec& spec) {
  if (spec.axes.empty() || spec.axes.size() != spec.grids.size())
    throw std::invalid_argument("sweep needs one grid per axis");

  const auto points = grid_points(spec);
  std::vector<PointOutcome> outcomes(points.size());
  parallel_for_indexed(points.size(), resolve_jobs(spec.jobs), [&](std::size_t i) {
    outcomes[i] = evaluate_point(spec, point_params(spec, points[i]));
    outcomes[i].row.axis_values = points[i];
  });

  SweepResult result;
  result.spec = spec;
  result.aux_columns = aux_columns_for(spec);
  result.rows.reserve(points.size());
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    for (const auto& d : outcomes[i].decisions)
      result.decisions.push_back("row " + std::to_string(i) + ": " + d);
    for (const auto& w : outcomes[i].warnings)
      if (std::find(result.warnings.begin(), result.warnings.end(), w) == result.warnings.end())
        result.warnings.push_back(w);
    result.rows.push_back(std::move(outcomes[i].row));
  }

  if (spec.wants(Observable::relaxation) && spec.axes.size() == 2 &&
      is_relaxation_axis(spec.axes[0]) && is_relaxation_axis(spec.axes[1])) {
    result.relaxation_boundary =
        relaxation_map(spec.base, spec.axes[0], spec.axes[1], spec.grids[0].values,
                       spec.grids[1].values)
            .boundary;
  }
  return result;
}

void write_csv(const SweepResult& result, std::ostream& os) {
  for (const auto& a : result.spec.axes) os << a << ',';
  os << "re_chi1,im_chi1,re_chi2,im_chi2";
  for (const auto& c : result.aux_columns) os << ',' << c;
  os << ",status\n";
  for (const auto& row : result.rows) {
    for (double v : row.axis_values) os << format_double(v) << ',';
    os << format_double(row.chi1.real()) << ',' << format_double(row.chi1.imag()) << ','
       << format_double(row.chi2.real()) << ',' << format_double(row.chi2.imag());
    for (double v : row.aux) os << ',' << format_double(v);
    os << ',' << csv_field(row.status_string()) << '\n';
  }
}

json to_json(const SweepResult& result, bool include_timestamp) {
  json rows = json::array();
  for (const auto& row : result.rows) {
    json r;
    for (std::size_t i = 0; i < row.axis_values.size(); ++i)
      r["axes"][result.spec.axes[i]] = row.axis_values[i];
    r["chi1"] = {row.chi1.real(), row.chi1.imag()};
    r["chi2"] = {row.chi2.real(), row.chi2.imag()};
    for (std::size_t i = 0; i < row.aux.size(); ++i) r["aux"][result.aux_columns[i]] = row.aux[i];
    r["status"] = row.status_string();
    rows.push_back(std::move(r));
  }
  json provenance = {{"code_version", kCodeVersion},
                     {"solver_decisions", result.decisions},
                     {"warnings", result.warnings}};
  if (include_timestamp) provenance["generated_at"] = utc_timestamp();
  json j = {{"schema_version", kSchemaVersion},
            {"spec", to_json(result.spec)},
            {"columns", json::array()},
            {"rows", std::move(rows)},
            {"provenance", std::move(provenance)}};
  for (const auto& a : result.spec.axes) j["columns"].push_back(a);
  for (const char* c : {"re_chi1", "im_chi1", "re_chi2", "im_chi2"}) j["columns"].push_back(c);
  for (const auto& c : result.aux_columns) j["columns"].push_back(c);
  j["columns"].push_back("status");
  if (!result.relaxation_boundary.empty()) {
    j["relaxation_boundary"] = json::array();
    for (const auto& [a, b] : result.relaxation_boundary) j["relaxation_boundary"].push_back({a, b});
  }
  return j;
}

void write_result(const SweepResult& result, const std::string& path, OutputFormat format) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file " + path);
  if (format == OutputFormat::csv)
    write_csv(result, os);
  else
    os << to_json(result).dump(2) << '\n';
  if (!os) throw std::runtime_error("failed writing " + path);
}

NullRefraction find_null_refraction(const ModelParams& params, std::int64_t m_min,
                                    std::int64_t m_max) {
  if (params.delta != 0.0) throw std::invalid_argument("null-refraction scan requires delta = 0");
  if (m_min < 1 || m_max < m_min) throw std::invalid_argument("need 1 <= m_min <= m_max");

  const auto steps = pq_recursion(params, m_max);
  NullRefraction out;
  out.scan.reserve(static_cast<std::size_t>(m_max - m_min + 1));
  for (std::int64_t m = m_min; m <= m_max; ++m) {
    const BlockadeState state = assemble_state(params, m, steps);
    out.scan.emplace_back(m, blockade_susceptibility(state, 2).real());
  }

  // chi^(2) vanishes identically for a single particle, so M = 1 is kept in
  // the scan but never taken as a root.
  const auto first = std::find_if(out.scan.begin(), out.scan.end(),
                                  [](const auto& e) { return e.first >= 2; });
  for (auto it = first; it != out.scan.end() && std::next(it) != out.scan.end(); ++it) {
    const double a = it->second;
    const double b = std::next(it)->second;
    if (a == 0.0 || (a > 0.0) != (b > 0.0)) {
      const auto& best = std::abs(a) <= std::abs(b) ? *it : *std::next(it);
      out.m = best.first;
      out.re_chi2 = best.second;
      out.crossing = true;
      out.bracket_lo = it->first;
      return out;
    }
  }
  auto best = std::min_element(first, out.scan.end(), [](auto& x, auto& y) {
    return std::abs(x.second) < std::abs(y.second);
  });
  if (best == out.scan.end()) best = out.scan.begin();
  out.m = best->first;
  out.re_chi2 = best->second;
  out.crossing = false;
  return out;
}

}  // namespace rydeit
