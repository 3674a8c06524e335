#include "wplab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "wplab/errors.hpp"

namespace wplab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double param_or(const std::vector<double>& p, std::size_t i, double fallback)
{
  return i < p.size() ? p[i] : fallback;
}

// Linear interpolation of a tabulated field at t (t inside the table).
double interpolate(const RadialField& table, double t)
{
  const auto& g = table.grid();
  if (t < g.lo() - 1e-12 * g.length() || t > g.hi() + 1e-12 * g.length())
    throw InvalidArgument("tabulated profile evaluated at t=" + std::to_string(t) +
                          " outside [" + std::to_string(g.lo()) + ", " +
                          std::to_string(g.hi()) + "]");
  const double s = std::clamp((t - g.lo()) / g.spacing(), 0.0,
                              static_cast<double>(g.size() - 1));
  const auto i = std::min(static_cast<std::size_t>(s), g.size() - 2);
  const double w = s - static_cast<double>(i);
  return (1.0 - w) * table[i] + w * table[i + 1];
}

// A * t^k and its derivatives, with 0 * t^(negative) treated as 0.
double power_term(double coeff, double t, double k)
{
  if (coeff == 0.0)
    return 0.0;
  return coeff * std::pow(t, k);
}

double adaptive_integral(auto&& f, double a, double b)
{
  using boost::math::quadrature::gauss_kronrod;
  double error = 0.0;
  const double value = gauss_kronrod<double, 61>::integrate(f, a, b, 20, 1e-14, &error);
  if (!std::isfinite(value))
    throw NumericalError("adaptive quadrature produced a non-finite value");
  return value;
}

bool has_weight_term(const ModelSpace& space)
{
  return std::isfinite(space.m) && !space.unweighted_dimension();
}

}  // namespace

// ---------------------------------------------------------------------------
// ProfileSpec

ProfileSpec::ProfileSpec(Tag tag, std::vector<double> params)
    : tag_(tag), params_(std::move(params))
{}

ProfileSpec ProfileSpec::exponential(double rate, double amplitude)
{
  return ProfileSpec(Tag::Exponential, {rate, amplitude});
}

ProfileSpec ProfileSpec::sinh(double rate, double amplitude)
{
  return ProfileSpec(Tag::Sinh, {rate, amplitude});
}

ProfileSpec ProfileSpec::linear(double slope, double intercept)
{
  return ProfileSpec(Tag::Linear, {slope, intercept});
}

ProfileSpec ProfileSpec::power(double exponent, double amplitude)
{
  return ProfileSpec(Tag::PowerOfT, {exponent, amplitude});
}

ProfileSpec ProfileSpec::tabulated(RadialField table)
{
  ProfileSpec spec(Tag::Tabulated, {});
  spec.table_d1_ = derivative(table);
  spec.table_d2_ = derivative(*spec.table_d1_);
  spec.table_ = std::move(table);
  return spec;
}

ProfileSpec ProfileSpec::from_params(Tag tag, const std::vector<double>& params)
{
  if (tag == Tag::Tabulated)
    throw InvalidArgument("tabulated profiles are built from a table, not params");
  if (params.empty() || params.size() > 2)
    throw InvalidArgument("profile '" + to_string(tag) + "' takes 1 or 2 params");
  for (double x : params)
    if (!std::isfinite(x))
      throw InvalidArgument("profile params must be finite");
  switch (tag) {
    case Tag::Exponential:
      return exponential(params[0], param_or(params, 1, 1.0));
    case Tag::Sinh:
      return sinh(params[0], param_or(params, 1, 1.0));
    case Tag::Linear:
      return linear(params[0], param_or(params, 1, 0.0));
    case Tag::PowerOfT:
      return power(params[0], param_or(params, 1, 1.0));
    case Tag::Tabulated:
      break;
  }
  throw InvalidArgument("unknown profile tag");
}

double ProfileSpec::value(double t) const
{
  const double c = param_or(params_, 0, 0.0);
  const double a = param_or(params_, 1, 0.0);
  switch (tag_) {
    case Tag::Exponential: return a * std::exp(c * t);
    case Tag::Sinh: return a * std::sinh(c * t);
    case Tag::Linear: return c * t + a;
    case Tag::PowerOfT: return power_term(a, t, c);
    case Tag::Tabulated: return interpolate(*table_, t);
  }
  return 0.0;
}

double ProfileSpec::first(double t) const
{
  const double c = param_or(params_, 0, 0.0);
  const double a = param_or(params_, 1, 0.0);
  switch (tag_) {
    case Tag::Exponential: return a * c * std::exp(c * t);
    case Tag::Sinh: return a * c * std::cosh(c * t);
    case Tag::Linear: return c;
    case Tag::PowerOfT: return power_term(a * c, t, c - 1.0);
    case Tag::Tabulated: return interpolate(*table_d1_, t);
  }
  return 0.0;
}

double ProfileSpec::second(double t) const
{
  const double c = param_or(params_, 0, 0.0);
  const double a = param_or(params_, 1, 0.0);
  switch (tag_) {
    case Tag::Exponential: return a * c * c * std::exp(c * t);
    case Tag::Sinh: return a * c * c * std::sinh(c * t);
    case Tag::Linear: return 0.0;
    case Tag::PowerOfT: return power_term(a * c * (c - 1.0), t, c - 2.0);
    case Tag::Tabulated: return interpolate(*table_d2_, t);
  }
  return 0.0;
}

bool ProfileSpec::is_constant() const
{
  switch (tag_) {
    case Tag::Linear: return params_[0] == 0.0;
    case Tag::Exponential: return params_[0] == 0.0 || params_[1] == 0.0;
    case Tag::PowerOfT: return params_[0] == 0.0 || params_[1] == 0.0;
    case Tag::Sinh: return params_[0] == 0.0 || params_[1] == 0.0;
    case Tag::Tabulated: {
      const auto v = table_->values();
      return std::all_of(v.begin(), v.end(), [&](double x) { return x == v[0]; });
    }
  }
  return false;
}

std::pair<double, double> ProfileSpec::domain() const
{
  if (tag_ == Tag::Tabulated)
    return {table_->grid().lo(), table_->grid().hi()};
  if (tag_ == Tag::PowerOfT && params_[0] != std::floor(params_[0]))
    return {0.0, kInf};
  return {-kInf, kInf};
}

RadialField ProfileSpec::sample(const RadialGrid& grid) const
{
  if (tag_ == Tag::Tabulated && table_->grid() == grid)
    return *table_;
  return RadialField::sample(grid, [this](double t) { return value(t); });
}

std::string to_string(ProfileSpec::Tag tag)
{
  switch (tag) {
    case ProfileSpec::Tag::Exponential: return "exponential";
    case ProfileSpec::Tag::Sinh: return "sinh";
    case ProfileSpec::Tag::Linear: return "linear";
    case ProfileSpec::Tag::PowerOfT: return "power";
    case ProfileSpec::Tag::Tabulated: return "tabulated";
  }
  return "?";
}

ProfileSpec::Tag profile_tag_from_string(const std::string& name)
{
  if (name == "exponential") return ProfileSpec::Tag::Exponential;
  if (name == "sinh") return ProfileSpec::Tag::Sinh;
  if (name == "linear") return ProfileSpec::Tag::Linear;
  if (name == "power") return ProfileSpec::Tag::PowerOfT;
  if (name == "tabulated") return ProfileSpec::Tag::Tabulated;
  throw InvalidArgument("unknown profile tag '" + name + "'");
}

// ---------------------------------------------------------------------------
// ModelSpace

std::string to_string(SpaceKind kind)
{
  switch (kind) {
    case SpaceKind::LineWarped: return "line_warped";
    case SpaceKind::BallRotSym: return "ball_rotsym";
    case SpaceKind::CustomDensity: return "custom_density";
  }
  return "?";
}

SpaceKind space_kind_from_string(const std::string& name)
{
  if (name == "line_warped") return SpaceKind::LineWarped;
  if (name == "ball_rotsym") return SpaceKind::BallRotSym;
  if (name == "custom_density") return SpaceKind::CustomDensity;
  throw InvalidArgument("unknown space kind '" + name + "'");
}

bool ModelSpace::unweighted_dimension() const
{
  return std::isfinite(m) && m == static_cast<double>(n);
}

void ModelSpace::validate() const
{
  const int min_n = kind == SpaceKind::CustomDensity ? 1 : 2;
  if (n < min_n)
    throw InvalidArgument("model space: n must be >= " + std::to_string(min_n));
  if (std::isnan(m) || m < static_cast<double>(n))
    throw InvalidArgument("model space: need m >= n");
  if (unweighted_dimension() && !weight.is_constant())
    throw InvalidArgument("model space: m == n requires a constant weight");
  if (!std::isfinite(kappa) || kappa < 0.0)
    throw InvalidArgument("model space: kappa must be finite and >= 0");

  if (kind == SpaceKind::BallRotSym) {
    const auto [lo, hi] = warp.domain();
    if (lo > 0.0 || hi <= 0.0)
      throw InvalidArgument("ball model: warp profile must be defined at r = 0");
    const double tol = warp.tag() == ProfileSpec::Tag::Tabulated ? 1e-3 : 1e-12;
    if (std::abs(warp.value(0.0)) > tol || std::abs(warp.first(0.0) - 1.0) > tol * 10)
      throw InvalidArgument("ball model: need phi(0) = 0 and phi'(0) = 1");
  }
}

ModelSpace line_model(int n, double m)
{
  return line_model_with_weight(n, m, -(m - static_cast<double>(n)));
}

ModelSpace line_model_with_weight(int n, double m, double weight_slope)
{
  ModelSpace s;
  s.kind = SpaceKind::LineWarped;
  s.n = n;
  s.m = m;
  s.kappa = 1.0;
  s.warp = ProfileSpec::exponential(1.0);
  s.weight = ProfileSpec::linear(weight_slope);
  s.validate();
  return s;
}

ModelSpace space_form_ball(int n, double kappa)
{
  ModelSpace s;
  s.kind = SpaceKind::BallRotSym;
  s.n = n;
  s.m = n;
  s.kappa = kappa;
  if (kappa > 0.0) {
    const double k = std::sqrt(kappa);
    s.warp = ProfileSpec::sinh(k, 1.0 / k);
  } else {
    s.warp = ProfileSpec::power(1.0);
  }
  s.weight = ProfileSpec::constant(0.0);
  s.validate();
  return s;
}

ModelSpace flat_density(double c)
{
  if (!(c > 0.0))
    throw InvalidArgument("flat_density: density must be positive");
  ModelSpace s;
  s.kind = SpaceKind::CustomDensity;
  s.n = 1;
  s.m = 1.0;
  s.kappa = 0.0;
  s.warp = ProfileSpec::constant(1.0);
  s.weight = ProfileSpec::constant(-std::log(c));
  s.validate();
  return s;
}

std::pair<double, double> coordinate_ball(const ModelSpace& space, double r)
{
  if (!(r > 0.0))
    throw InvalidArgument("coordinate_ball: radius must be positive");
  if (space.kind == SpaceKind::BallRotSym || space.kind == SpaceKind::CustomDensity)
    return {0.0, r};
  return {-r, r};
}

double log_density_slope(const ModelSpace& space, double t)
{
  double slope = -space.weight.first(t);
  if (space.n > 1)
    slope += (space.n - 1) * space.warp.first(t) / space.warp.value(t);
  return slope;
}

namespace {

double density_at(const ModelSpace& space, double t)
{
  const double f = space.weight.value(t);
  if (space.n == 1)
    return std::exp(-f);
  const double phi = space.warp.value(t);
  if (phi <= 0.0) {
    if (space.kind == SpaceKind::BallRotSym && phi == 0.0 && t == 0.0)
      return 0.0;
    throw InvalidArgument("density: warp profile phi = " + std::to_string(phi) +
                          " <= 0 at t = " + std::to_string(t));
  }
  return std::exp((space.n - 1) * std::log(phi) - f);
}

}  // namespace

double density_value(const ModelSpace& space, double t)
{
  return density_at(space, t);
}

RadialField density(const ModelSpace& space, const RadialGrid& grid)
{
  return RadialField::sample(grid, [&](double t) { return density_at(space, t); });
}

RadialField ricci_f_m_radial(const ModelSpace& space, const RadialGrid& grid)
{
  if (std::isfinite(space.m) && space.unweighted_dimension() && !space.weight.is_constant())
    throw InvalidArgument("ricci_f_m_radial: m == n with a nonconstant weight");
  const bool weighted = has_weight_term(space);
  return RadialField::sample(grid, [&](double t) {
    double ric = space.weight.second(t);
    if (space.n > 1)
      ric -= (space.n - 1) * space.warp.second(t) / space.warp.value(t);
    if (weighted) {
      const double df = space.weight.first(t);
      ric -= df * df / (space.m - space.n);
    }
    return ric;
  });
}

double weighted_volume(const ModelSpace& space, double r)
{
  const auto [a, b] = coordinate_ball(space, r);
  for (const auto* profile : {&space.warp, &space.weight}) {
    const auto [lo, hi] = profile->domain();
    if (a < lo || b > hi)
      throw InvalidArgument("weighted_volume: radius " + std::to_string(r) +
                            " exceeds the profile domain");
  }
  return adaptive_integral([&](double t) { return density_at(space, t); }, a, b);
}

double hyperbolic_model_volume(double m, double r)
{
  return comparison_model_volume(m, 1.0, r);
}

double comparison_model_volume(double m, double kappa, double r)
{
  if (!(m > 1.0) || !std::isfinite(m))
    throw InvalidArgument("model volume: need finite m > 1");
  if (!(r > 0.0))
    throw InvalidArgument("model volume: need r > 0");
  if (kappa < 0.0)
    throw InvalidArgument("model volume: need kappa >= 0");
  if (kappa == 0.0)
    return std::pow(r, m) / m;
  const double k = std::sqrt(kappa);
  return adaptive_integral(
      [&](double s) { return std::pow(std::sinh(k * s) / k, m - 1.0); }, 0.0, r);
}

double curvature_hypothesis_slack(const ModelSpace& space, double lo, double hi)
{
  if (!std::isfinite(space.m) && space.kappa > 0.0)
    throw InvalidArgument("curvature hypothesis -(m-1) kappa needs finite m");
  // phi''/phi is 0/0 at the pole; finite differences of a table cannot
  // resolve it, so tabulated balls are sampled away from r = 0.
  if (space.kind == SpaceKind::BallRotSym && lo <= 0.0)
    lo = (space.warp.tag() == ProfileSpec::Tag::Tabulated ? 0.05 : 1e-6) * (hi - lo);
  const RadialGrid grid(lo, hi, 2001);
  const auto ric = ricci_f_m_radial(space, grid);
  const double floor = std::isfinite(space.m) ? -(space.m - 1.0) * space.kappa : 0.0;
  return ric.min() - floor;
}

CheckReport volume_ratio_check(const ModelSpace& space, double r1, double r2)
{
  if (!(r1 > 0.0) || !(r1 < r2))
    throw InvalidArgument("volume_ratio_check: need 0 < r1 < r2");

  CheckReport report;
  report.name = "volume_comparison";

  const auto [lo, hi] = coordinate_ball(space, r2);
  const double slack = curvature_hypothesis_slack(space, lo, hi);
  const double hyp_tol = 1e-8 * std::max(1.0, (space.m - 1.0) * space.kappa);
  report.hypothesis_ok = slack >= -hyp_tol;
  report.details["curvature_slack"] = slack;
  if (space.kind == SpaceKind::LineWarped) {
    report.notes["assumption"] = "fiber Ricci curvature assumed nonnegative";
    report.notes["ball"] = "coordinate slab [-r, r]";
  }

  const double vf1 = weighted_volume(space, r1);
  const double vf2 = weighted_volume(space, r2);
  const double vm1 = comparison_model_volume(space.m, space.kappa, r1);
  const double vm2 = comparison_model_volume(space.m, space.kappa, r2);

  const double tol = 1e-8;
  report.measured = vf2 / vf1;
  report.bound = vm2 / vm1;
  report.margin = report.bound - report.measured;
  report.passed = report.measured <= report.bound * (1.0 + tol);
  report.details["r1"] = r1;
  report.details["r2"] = r2;
  report.details["vf_r1"] = vf1;
  report.details["vf_r2"] = vf2;
  report.details["model_r1"] = vm1;
  report.details["model_r2"] = vm2;
  report.details["tolerance"] = tol;
  return report;
}

CheckReport laplacian_comparison_check(const ModelSpace& space, const RadialGrid& grid)
{
  if (space.kind != SpaceKind::BallRotSym)
    throw UnsupportedGeometry(
        "laplacian comparison needs a ball model: the coordinate of a warped "
        "line is not the distance to a point");
  if (!(space.kappa > 0.0))
    throw InvalidArgument("laplacian comparison: kappa must be positive");
  if (!std::isfinite(space.m))
    throw InvalidArgument("laplacian comparison: m must be finite");

  CheckReport report;
  report.name = "laplacian_comparison";

  const double k = std::sqrt(space.kappa);
  const double h = grid.spacing();
  const double tol = std::max(1e-8, 10.0 * h * h);
  double max_excess = -std::numeric_limits<double>::infinity();
  double max_gap = 0.0;
  double worst_r = 0.0;
  std::size_t checked = 0;

  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double r = grid.node(i);
    if (r <= 0.0)
      continue;
    const double lhs = log_density_slope(space, r);
    const double rhs = (space.m - 1.0) * k / std::tanh(k * r);
    const double excess = lhs - rhs;
    if (excess > max_excess) {
      max_excess = excess;
      worst_r = r;
    }
    max_gap = std::max(max_gap, std::abs(excess));
    ++checked;
  }
  if (checked == 0)
    throw InvalidArgument("laplacian comparison: no interior node with r > 0");

  const double slack = curvature_hypothesis_slack(space, std::max(grid.lo(), 0.0), grid.hi());
  report.hypothesis_ok = slack >= -1e-8 * std::max(1.0, (space.m - 1.0) * space.kappa);
  report.measured = max_excess;
  report.bound = 0.0;
  report.margin = -max_excess;
  report.passed = max_excess <= tol;
  report.details["max_abs_gap"] = max_gap;
  report.details["worst_r"] = worst_r;
  report.details["tolerance"] = tol;
  report.details["curvature_slack"] = slack;
  report.details["nodes_checked"] = static_cast<double>(checked);
  return report;
}

}  // namespace wplab
