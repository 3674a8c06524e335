#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "wplab/errors.hpp"
#include "wplab/plaplacian.hpp"
#include "wplab/serialize.hpp"

#ifndef WPLAB_VERSION
#define WPLAB_VERSION "unknown"
#endif

namespace wplab::cli {

namespace {

using nlohmann::json;

std::string radius_key(const std::string& stem, double R)
{
  std::ostringstream os;
  os << stem << "@R=" << R;
  return os.str();
}

void require_increasing(const std::vector<double>& radii, const std::string& what)
{
  if (radii.empty())
    throw InvalidArgument(what + " must be nonempty");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || !std::isfinite(radii[i]))
      throw InvalidArgument(what + " must be positive and finite");
    if (i > 0 && !(radii[i] > radii[i - 1]))
      throw InvalidArgument(what + " must be strictly increasing");
  }
}

std::string to_string(FieldSource f)
{
  return f == FieldSource::Analytic ? "analytic" : "computed";
}

FieldSource field_source_from_string(const std::string& s)
{
  if (s == "computed")
    return FieldSource::Computed;
  if (s == "analytic")
    return FieldSource::Analytic;
  throw InvalidArgument("field must be \"computed\" or \"analytic\", got \"" + s + "\"");
}

json base_report(const std::string& command, const ScenarioConfig* config)
{
  json body;
  body["schema"] = report_schema_version;
  body["version"] = WPLAB_VERSION;
  body["command"] = command;
  if (config) {
    body["scenario"] = config->name;
    body["config"] = config_to_json(*config);
  }
  return body;
}

// Constant drift k = (log J)' of a warped line; e^{-(k/p) t} is then an exact
// eigenfunction with eigenvalue (k/p)^p.
double constant_drift(const ModelSpace& space)
{
  if (space.kind != SpaceKind::LineWarped)
    throw InvalidArgument("analytic field needs a warped line");
  const double k = log_density_slope(space, 0.0);
  for (double t : {-1.0, 1.0})
    if (std::abs(log_density_slope(space, t) - k) > 1e-12 * std::max(1.0, std::abs(k)))
      throw InvalidArgument("analytic field needs a constant log-density slope");
  return k;
}

std::pair<double, double> eigen_interval(const ScenarioConfig& c)
{
  return c.interval ? *c.interval : coordinate_ball(c.space, c.radius);
}

std::vector<std::pair<double, double>> rows_of(const RadialField& f)
{
  std::vector<std::pair<double, double>> rows;
  rows.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    rows.emplace_back(f.grid().node(i), f[i]);
  return rows;
}

// Report whose premises do not apply to the scenario.
CheckReport not_applicable(const std::string& name, const std::string& why)
{
  CheckReport r;
  r.name = name;
  r.hypothesis_ok = false;
  r.notes["reason"] = why;
  return r;
}

// Fitted constants must agree within a factor 2 across radii.
CheckReport stability_report(const std::string& name, const std::map<double, double>& fitted)
{
  CheckReport r;
  r.name = name;
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& [R, value] : fitted) {
    r.details[radius_key("C_required", R)] = value;
    lo = std::min(lo, value);
    hi = std::max(hi, value);
  }
  r.measured = hi;
  r.bound = 2.0 * lo;
  r.margin = r.bound - r.measured;
  r.passed = r.measured <= r.bound;
  return r;
}

// Supplies eigenfields per coordinate radius: computed ones are solved once,
// together, and shared between checks.
class FieldBank
{
public:
  FieldBank(const ScenarioConfig& config, const std::set<double>& radii) : config_(config)
  {
    if (config.field == FieldSource::Analytic) {
      drift_ = constant_drift(config.space);
      return;
    }
    if (radii.empty())
      return;
    const std::vector<double> sorted(radii.begin(), radii.end());
    for (auto& entry : eigen_sweep(config.space, PExponent(config.p), sorted, config.npoints,
                                   config.solver_options()))
      solved_.emplace(entry.radius, std::move(entry.result));
  }

  EigenResult at(double R) const
  {
    if (config_.field == FieldSource::Computed)
      return solved_.at(R);
    const auto [lo, hi] = coordinate_ball(config_.space, R);
    const double a = drift_ / config_.p;
    return EigenResult{.lambda = std::pow(a, config_.p),
                       .eigenfield = RadialField::sample(RadialGrid(lo, hi, config_.npoints),
                                                         [a](double t) { return std::exp(-a * t); }),
                       .converged = true,
                       .history = {}};
  }

  const std::map<double, EigenResult>& solved() const { return solved_; }

private:
  const ScenarioConfig& config_;
  double drift_ = 0.0;
  std::map<double, EigenResult> solved_;
};

CheckReport volume_comparison(const ScenarioConfig& c)
{
  CheckReport r;
  r.name = "volume_comparison";
  r.bound = 1.0 + 1e-8;
  std::size_t pairs = 0;
  for (int i = 1; i <= 8; ++i) {
    for (int j = i + 1; j <= 8; ++j) {
      const CheckReport pair = volume_ratio_check(c.space, c.radius * i / 8.0, c.radius * j / 8.0);
      ++pairs;
      r.hypothesis_ok = r.hypothesis_ok && pair.hypothesis_ok;
      const double ratio = pair.measured / pair.bound;
      if (pairs == 1 || ratio > r.measured) {
        r.measured = ratio;
        r.passed = pair.passed;
        r.details["worst_r1"] = c.radius * i / 8.0;
        r.details["worst_r2"] = c.radius * j / 8.0;
      }
      if (!pair.passed)
        r.passed = false;
    }
  }
  r.details["pairs"] = static_cast<double>(pairs);
  r.margin = r.bound - r.measured;
  return r;
}

CheckReport picone_pair(double p)
{
  const RadialGrid grid(0.0, std::numbers::pi, 3142);
  const auto u = RadialField::sample(grid, [](double t) { return 1.0 + std::sin(t) * std::sin(t); });
  const auto v = RadialField::sample(grid, [](double t) { return 2.0 + std::cos(t); });
  const PiconeResult res = picone(u, v, PExponent(p));

  CheckReport r;
  r.name = "picone";
  r.measured = res.max_gap / res.scale;
  r.bound = 1e-4;
  r.margin = r.bound - r.measured;
  r.passed = r.measured <= r.bound && res.min_L >= -1e-8 * res.scale;
  r.details["max_gap"] = res.max_gap;
  r.details["min_L"] = res.min_L;
  r.details["scale"] = res.scale;
  return r;
}

struct MoserOutcome
{
  CheckReport report;
  std::vector<PlotSeries> plots;
};

MoserOutcome moser_check(const ScenarioConfig& c, const FieldBank& bank)
{
  MoserOutcome out;
  CheckReport& r = out.report;
  r.name = "moser_trace";
  if (c.space.n <= 2)
    return {not_applicable(r.name, "the exponent ladder needs n > 2"), {}};

  bool holder_ok = true;
  bool converged = true;
  double dmin = std::numeric_limits<double>::infinity();
  double dmax = 0.0;
  for (double R : c.moser_radii) {
    const EigenResult eig = bank.at(2.0 * R);
    const RadialField u = moser_potential(inner_part(eig.eigenfield, 0.9), PExponent(c.p));
    const MoserTrace t = moser_trace(c.space, u, PExponent(c.p), R, c.moser_C_b0, c.space.kappa,
                                     c.moser_kmax);
    double worst = 0.0;
    std::optional<double> settle;
    PlotSeries series{.file = "moser_norms_R" + std::to_string(static_cast<int>(R)) + ".tsv",
                      .x_label = "k",
                      .y_label = "norm",
                      .rows = {}};
    for (std::size_t k = 0; k < t.norms.size(); ++k) {
      const double holder = t.ball_sups[k] * std::pow(t.volumes[k], 1.0 / t.b_sequence[k]);
      worst = std::max(worst, t.norms[k] / holder);
      if (!settle && t.b_sequence[k] > 200.0)
        settle = std::abs(t.norms[k] / t.sup_inner - 1.0);
      series.rows.emplace_back(static_cast<double>(k), t.norms[k]);
    }
    out.plots.push_back(std::move(series));
    holder_ok = holder_ok && worst <= 1.0 + 1e-12;
    converged = converged && settle && *settle <= 0.05;
    dmin = std::min(dmin, t.d_fit);
    dmax = std::max(dmax, t.d_fit);
    r.details[radius_key("holder_ratio", R)] = worst;
    r.details[radius_key("settle_error", R)] = settle.value_or(std::numeric_limits<double>::infinity());
    r.details[radius_key("d_fit", R)] = t.d_fit;
  }
  r.measured = dmax / dmin;
  r.bound = 2.0;
  r.margin = r.bound - r.measured;
  r.passed = holder_ok && converged && r.measured <= r.bound;
  if (!holder_ok)
    r.notes["holder"] = "norm above sup_{B_k} h * V_f(B_k)^(1/b_k)";
  if (!converged)
    r.notes["convergence"] = "norm not within 5% of the inner sup once b_k > 200";
  return out;
}

CheckReport subsolution(const ScenarioConfig& c)
{
  try {
    const double k = constant_drift(c.space);
    const double rate = k / c.p;
    const auto [lo, hi] = coordinate_ball(c.space, c.radius);
    return check_subsolution(c.space, PExponent(c.p), rate, std::pow(rate, c.p),
                             RadialGrid(lo, hi, c.npoints));
  } catch (const InvalidArgument& e) {
    return not_applicable("subsolution", e.what());
  }
}

}  // namespace

void ScenarioConfig::validate() const
{
  space.validate();
  (void)PExponent(p);
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw InvalidArgument("radius must be positive");
  if (interval && !(interval->second > interval->first))
    throw InvalidArgument("interval must satisfy lo < hi");
  require_increasing(radii, "radii");
  require_increasing(calibration_radii, "calibration_radii");
  require_increasing(moser_radii, "moser_radii");
  require_increasing(liouville_radii, "liouville_radii");
  if (npoints < 33)
    throw InvalidArgument("npoints must be at least 33");
  solver_options().validate();
  const auto& known = check_names();
  std::set<std::string> seen;
  for (const auto& name : checks) {
    if (std::find(known.begin(), known.end(), name) == known.end())
      throw InvalidArgument("unknown check \"" + name + "\"");
    if (!seen.insert(name).second)
      throw InvalidArgument("check \"" + name + "\" listed twice");
  }
  if (std::isfinite(space.m))
    compute_bounds(bound_inputs());
}

SolverOptions ScenarioConfig::solver_options() const
{
  SolverOptions opts;
  opts.eps = eps;
  opts.tol_rel = tol_rel;
  opts.max_iters = max_iters;
  return opts;
}

BoundInputs ScenarioConfig::bound_inputs() const
{
  BoundInputs in = bounds;
  in.p = p;
  in.n = std::max(space.n, 2);
  in.m = space.m;
  return in;
}

const std::vector<std::string>& check_names()
{
  static const std::vector<std::string> names{
      "volume_comparison", "laplacian_comparison", "local_gradient_estimate",
      "global_sharp_gradient", "harnack", "picone", "moser_trace", "subsolution",
      "liouville_rate"};
  return names;
}

const std::vector<std::string>& builtin_scenario_names()
{
  static const std::vector<std::string> names{
      "line-m3-p2", "interval-flat", "example1", "example1-computed",
      "line-m3-p3", "flat-liouville", "ball-comparison", "broken-lambda"};
  return names;
}

ScenarioConfig builtin_scenario(const std::string& name)
{
  ScenarioConfig c;
  c.name = name;
  if (name == "line-m3-p2") {
    c.space = line_model(3, 3.0);
    c.p = 2.0;
    c.radius = 8.0;
    c.checks = {"local_gradient_estimate", "global_sharp_gradient", "harnack"};
  } else if (name == "interval-flat") {
    c.space = flat_density();
    c.p = 2.0;
    c.interval = std::pair{0.0, std::numbers::pi};
    c.npoints = 3142;
    c.checks = {"picone"};
  } else if (name == "example1" || name == "example1-computed") {
    c.space = line_model(3, 5.0);
    c.p = 3.0;
    c.radius = 16.0;
    c.field = name == "example1" ? FieldSource::Analytic : FieldSource::Computed;
    c.checks = check_names();
    c.moser_radii = {2.0, 4.0};
    c.bounds.a = 4.0 / 3.0;
    c.bounds.lambda = std::pow(4.0 / 3.0, 3.0);
  } else if (name == "line-m3-p3") {
    c.space = line_model(3, 3.0);
    c.p = 3.0;
    c.radius = 16.0;
    c.checks = {"global_sharp_gradient", "local_gradient_estimate", "moser_trace"};
    c.bounds.a = 2.0 / 3.0;
    c.bounds.lambda = 8.0 / 27.0;
  } else if (name == "flat-liouville") {
    c.space = flat_density();
    c.p = 3.0;
    c.radius = 8.0;
    c.checks = {"liouville_rate", "picone"};
    c.bounds.kappa = 0.0;
  } else if (name == "ball-comparison") {
    c.space = space_form_ball(3, 1.0);
    c.p = 2.0;
    c.radius = 4.0;
    c.checks = {"laplacian_comparison", "volume_comparison"};
    c.liouville.flux = -1.0;
  } else if (name == "broken-lambda") {
    c = builtin_scenario("example1");
    c.name = name;
    c.bounds.lambda = 3.0;
  } else {
    std::string known;
    for (const auto& n : builtin_scenario_names())
      known += (known.empty() ? "" : ", ") + n;
    throw InvalidArgument("unknown scenario \"" + name + "\" (known: " + known + ")");
  }
  return c;
}

ScenarioConfig config_from_json(const json& j, ScenarioConfig c)
{
  if (!j.is_object())
    throw InvalidArgument("config must be a JSON object");
  try {
    auto radii_of = [](const json& a) {
      std::vector<double> out;
      for (const auto& x : a)
        out.push_back(number_from_json(x));
      return out;
    };
    if (j.contains("name"))
      c.name = j.at("name").get<std::string>();
    if (j.contains("space"))
      c.space = j.at("space").get<ModelSpace>();
    if (j.contains("p"))
      c.p = number_from_json(j.at("p"));
    if (j.contains("radius"))
      c.radius = number_from_json(j.at("radius"));
    if (j.contains("interval")) {
      const auto& iv = j.at("interval");
      if (iv.is_null())
        c.interval.reset();
      else if (iv.size() != 2)
        throw InvalidArgument("interval must be [lo, hi]");
      else
        c.interval = std::pair{number_from_json(iv[0]), number_from_json(iv[1])};
    }
    if (j.contains("radii"))
      c.radii = radii_of(j.at("radii"));
    if (j.contains("npoints"))
      c.npoints = j.at("npoints").get<std::size_t>();
    if (j.contains("eps")) {
      if (j.at("eps").is_null())
        c.eps.reset();
      else
        c.eps = number_from_json(j.at("eps"));
    }
    if (j.contains("tol_rel"))
      c.tol_rel = number_from_json(j.at("tol_rel"));
    if (j.contains("max_iters"))
      c.max_iters = j.at("max_iters").get<std::size_t>();
    if (j.contains("checks"))
      c.checks = j.at("checks").get<std::vector<std::string>>();
    if (j.contains("field"))
      c.field = field_source_from_string(j.at("field").get<std::string>());
    if (j.contains("calibration_radii"))
      c.calibration_radii = radii_of(j.at("calibration_radii"));
    if (j.contains("moser")) {
      const auto& m = j.at("moser");
      if (m.contains("radii"))
        c.moser_radii = radii_of(m.at("radii"));
      if (m.contains("C_b0"))
        c.moser_C_b0 = number_from_json(m.at("C_b0"));
      if (m.contains("kmax"))
        c.moser_kmax = m.at("kmax").get<std::size_t>();
    }
    if (j.contains("liouville")) {
      const auto& l = j.at("liouville");
      if (l.contains("radii"))
        c.liouville_radii = radii_of(l.at("radii"));
      if (l.contains("flux"))
        c.liouville.flux = number_from_json(l.at("flux"));
      if (l.contains("offset"))
        c.liouville.offset = number_from_json(l.at("offset"));
      if (l.contains("npoints"))
        c.liouville.npoints = l.at("npoints").get<std::size_t>();
    }
    if (j.contains("bounds")) {
      const auto& b = j.at("bounds");
      if (b.contains("a"))
        c.bounds.a = number_from_json(b.at("a"));
      if (b.contains("lambda"))
        c.bounds.lambda = number_from_json(b.at("lambda"));
      if (b.contains("kappa"))
        c.bounds.kappa = number_from_json(b.at("kappa"));
      if (b.contains("grad_f_min"))
        c.bounds.grad_f_min = number_from_json(b.at("grad_f_min"));
    }
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
  return c;
}

json config_to_json(const ScenarioConfig& c)
{
  auto numbers = [](const std::vector<double>& xs) {
    json a = json::array();
    for (double x : xs)
      a.push_back(json_number(x));
    return a;
  };
  json j;
  j["name"] = c.name;
  j["space"] = c.space;
  j["p"] = json_number(c.p);
  j["radius"] = json_number(c.radius);
  j["interval"] = c.interval ? json::array({json_number(c.interval->first),
                                            json_number(c.interval->second)})
                             : json(nullptr);
  j["radii"] = numbers(c.radii);
  j["npoints"] = c.npoints;
  j["eps"] = c.eps ? json_number(*c.eps) : json(nullptr);
  j["tol_rel"] = json_number(c.tol_rel);
  j["max_iters"] = c.max_iters;
  j["checks"] = c.checks;
  j["field"] = to_string(c.field);
  j["calibration_radii"] = numbers(c.calibration_radii);
  j["moser"] = {{"radii", numbers(c.moser_radii)},
                {"C_b0", json_number(c.moser_C_b0)},
                {"kmax", c.moser_kmax}};
  j["liouville"] = {{"radii", numbers(c.liouville_radii)},
                    {"flux", json_number(c.liouville.flux)},
                    {"offset", json_number(c.liouville.offset)},
                    {"npoints", c.liouville.npoints}};
  json b = {{"a", json_number(c.bounds.a)},
            {"lambda", json_number(c.bounds.lambda)},
            {"kappa", json_number(c.bounds.kappa)}};
  if (c.bounds.grad_f_min)
    b["grad_f_min"] = json_number(*c.bounds.grad_f_min);
  j["bounds"] = b;
  return j;
}

RunReport cmd_eigen(const ScenarioConfig& config)
{
  config.validate();
  const auto [lo, hi] = eigen_interval(config);
  const PExponent p(config.p);
  const EigenResult eig = solve_first_eigen(config.space, RadialGrid(lo, hi, config.npoints), p,
                                            config.solver_options());
  RunReport out;
  out.body = base_report("eigen", &config);
  json entry = eigen_summary(eig);
  entry["radius"] = config.interval ? json(nullptr) : json_number(config.radius);
  out.body["eigen"] = json::array({entry});
  out.body["status"] = eig.converged ? "ok" : "not-converged";
  out.exit_code = eig.converged ? 0 : 2;

  out.plots.push_back({.file = "eigenfield.tsv", .x_label = "t", .y_label = "v",
                       .rows = rows_of(eig.eigenfield)});
  std::string bound_label = "|v'|/v";
  if (std::isfinite(config.space.m) && config.space.m > 1.0) {
    const double top = lambda_max(config.p, config.space.m);
    std::ostringstream os;
    os << std::setprecision(10) << "|v'|/v (sharp bound "
       << sharp_root(config.p, config.space.m, std::min(eig.lambda, top)) << ")";
    bound_label = os.str();
  }
  out.plots.push_back({.file = "gradient_ratio.tsv", .x_label = "t", .y_label = bound_label,
                       .rows = rows_of(gradient_ratio(inner_part(eig.eigenfield, 0.8)))});
  return out;
}

RunReport cmd_sweep(const ScenarioConfig& config)
{
  config.validate();
  const auto sweep = eigen_sweep(config.space, PExponent(config.p), config.radii,
                                 config.npoints, config.solver_options());
  RunReport out;
  out.body = base_report("sweep", &config);
  json entries = json::array();
  PlotSeries table{.file = "lambda_vs_radius.tsv", .x_label = "R", .y_label = "lambda", .rows = {}};
  bool converged = true;
  for (const auto& e : sweep) {
    json entry = eigen_summary(e.result);
    entry["radius"] = json_number(e.radius);
    entries.push_back(std::move(entry));
    table.rows.emplace_back(e.radius, e.result.lambda);
    converged = converged && e.result.converged;
  }
  const bool monotone = is_nonincreasing(sweep, 1e-9);
  out.body["eigen"] = std::move(entries);
  out.body["monotone"] = monotone;
  out.body["status"] = !converged ? "not-converged" : monotone ? "ok" : "fail";
  out.exit_code = converged && monotone ? 0 : 2;
  out.plots.push_back(std::move(table));
  return out;
}

RunReport cmd_bounds(const BoundInputs& inputs)
{
  RunReport out;
  out.body = base_report("bounds", nullptr);
  out.body["bounds"] = compute_bounds(inputs);
  out.body["status"] = "ok";
  return out;
}

RunReport cmd_verify(const ScenarioConfig& config)
{
  config.validate();
  if (config.checks.empty())
    throw InvalidArgument("verify needs at least one check");
  const auto wants = [&](const std::string& name) {
    return std::find(config.checks.begin(), config.checks.end(), name) != config.checks.end();
  };

  std::set<double> radii;
  if (wants("global_sharp_gradient"))
    radii.insert(config.radius);
  if (wants("local_gradient_estimate") || wants("harnack"))
    radii.insert(config.calibration_radii.begin(), config.calibration_radii.end());
  if (wants("moser_trace") && config.space.n > 2)
    for (double R : config.moser_radii)
      radii.insert(2.0 * R);
  const FieldBank bank(config, radii);
  const PExponent p(config.p);

  RunReport out;
  std::vector<CheckReport> reports;
  for (const auto& name : config.checks) {
    if (name == "volume_comparison") {
      reports.push_back(volume_comparison(config));
    } else if (name == "laplacian_comparison") {
      if (config.space.kind != SpaceKind::BallRotSym) {
        reports.push_back(not_applicable(name, "needs a rotationally symmetric ball"));
      } else {
        CheckReport r = laplacian_comparison_check(config.space,
                                                   RadialGrid(0.0, config.radius, config.npoints));
        r.name = name;
        reports.push_back(std::move(r));
      }
    } else if (name == "local_gradient_estimate") {
      std::map<double, double> fitted;
      bool hypothesis = true;
      for (double R : config.calibration_radii) {
        const CheckReport r = check_local_gradient_estimate(config.space, bank.at(R), R, 1.0);
        fitted[R] = r.details.at("C_required");
        hypothesis = hypothesis && r.hypothesis_ok;
      }
      CheckReport r = stability_report(name, fitted);
      r.hypothesis_ok = hypothesis;
      reports.push_back(std::move(r));
    } else if (name == "global_sharp_gradient") {
      if (!std::isfinite(config.space.m)) {
        reports.push_back(not_applicable(name, "needs finite m"));
      } else {
        CheckReport r = check_global_sharp(config.space, bank.at(config.radius), p, config.space.m);
        r.name = name;
        reports.push_back(std::move(r));
      }
    } else if (name == "harnack") {
      std::map<double, double> fitted;
      for (double R : config.calibration_radii)
        fitted[R] = check_harnack(bank.at(R).eigenfield, R, config.space.kappa, 1.0)
                        .details.at("C_required");
      reports.push_back(stability_report(name, fitted));
    } else if (name == "picone") {
      reports.push_back(picone_pair(config.p));
    } else if (name == "moser_trace") {
      MoserOutcome m = moser_check(config, bank);
      reports.push_back(std::move(m.report));
      for (auto& s : m.plots)
        out.plots.push_back(std::move(s));
    } else if (name == "subsolution") {
      reports.push_back(subsolution(config));
    } else if (name == "liouville_rate") {
      CheckReport r = check_liouville_rate(config.space, p, config.liouville_radii,
                                           config.liouville);
      PlotSeries products{.file = "liouville_products.tsv", .x_label = "R",
                          .y_label = "R sup|v'|/v", .rows = {}};
      for (double R : config.liouville_radii)
        products.rows.emplace_back(R, R * r.details.at(radius_key("ratio", R)));
      out.plots.push_back(std::move(products));
      reports.push_back(std::move(r));
    }
  }

  out.body = base_report("verify", &config);
  json eigen = json::array();
  for (const auto& [R, eig] : bank.solved()) {
    json entry = eigen_summary(eig);
    entry["radius"] = json_number(R);
    eigen.push_back(std::move(entry));
  }
  out.body["eigen"] = std::move(eigen);
  if (std::isfinite(config.space.m))
    out.body["bounds"] = compute_bounds(config.bound_inputs());
  out.body["checks"] = reports;
  const bool ok = all_passed(reports);
  out.body["status"] = ok ? "ok" : "fail";
  out.exit_code = ok ? 0 : 2;
  return out;
}

void write_plot_data(const RunReport& report, const std::filesystem::path& dir)
{
  std::filesystem::create_directories(dir);
  for (const auto& series : report.plots) {
    std::ofstream os(dir / series.file);
    if (!os)
      throw InvalidArgument("cannot write " + (dir / series.file).string());
    os << "# " << series.x_label << '\t' << series.y_label << '\n';
    os << std::setprecision(17);
    for (const auto& [x, y] : series.rows)
      os << x << '\t' << y << '\n';
  }
}

}  // namespace wplab::cli
