#include "wplab/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "wplab/bounds.hpp"
#include "wplab/errors.hpp"

namespace wplab {

namespace {

void require_positive(const RadialField& v, const char* what)
{
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!(v[i] > 0.0))
      throw InvalidArgument(std::string(what) + ": field must be positive (node " +
                            std::to_string(i) + " holds " + std::to_string(v[i]) + ")");
}

// |x|^{q} sign(x), finite at x = 0 for every q > 0.
double signed_pow(double x, double q)
{
  if (x == 0.0)
    return 0.0;
  return std::copysign(std::pow(std::abs(x), q), x);
}

double median(std::vector<double> xs)
{
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

std::string radius_key(const char* prefix, double R)
{
  std::ostringstream os;
  os << prefix << "@R=" << R;
  return os.str();
}

double interval_slack(const ModelSpace& space, const RadialGrid& grid)
{
  return curvature_hypothesis_slack(space, grid.lo(), grid.hi());
}

double hypothesis_tolerance(const ModelSpace& space)
{
  const double scale = std::isfinite(space.m) ? (space.m - 1.0) * space.kappa : 0.0;
  return 1e-8 * std::max(1.0, scale);
}

// Intersection of the coordinate ball of radius r with the field's interval.
std::pair<double, double> clipped_ball(const ModelSpace& space, const RadialGrid& grid,
                                       double r)
{
  const auto [a, b] = coordinate_ball(space, r);
  return {std::max(a, grid.lo()), std::min(b, grid.hi())};
}

}  // namespace

RadialField gradient_ratio(const RadialField& v)
{
  require_positive(v, "gradient_ratio");
  std::vector<double> logs(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    logs[i] = std::log(v[i]);
  const RadialField slope = derivative(RadialField(v.grid(), std::move(logs)));
  std::vector<double> out(slope.size());
  for (std::size_t i = 0; i < out.size(); ++i)
    out[i] = std::abs(slope[i]);
  return RadialField(v.grid(), std::move(out));
}

RadialField inner_part(const RadialField& field, double fraction)
{
  if (!(fraction > 0.0 && fraction <= 1.0))
    throw InvalidArgument("inner_part: fraction must lie in (0, 1]");
  const auto& g = field.grid();
  const double mid = 0.5 * (g.lo() + g.hi());
  const double half = 0.5 * fraction * g.length();
  return restrict(field, mid - half, mid + half);
}

CheckReport check_local_gradient_estimate(const ModelSpace& space, const EigenResult& eig,
                                          double R, double C)
{
  const double kappa = space.kappa;
  CheckReport report;
  report.name = "local_gradient_estimate";
  report.bound = local_bound(kappa, R, C);
  report.measured = gradient_ratio(inner_part(eig.eigenfield, 0.5)).max();
  report.margin = report.bound - report.measured;
  report.passed = report.measured <= report.bound;

  const double slack = interval_slack(space, eig.eigenfield.grid());
  report.hypothesis_ok = slack >= -hypothesis_tolerance(space);
  report.details["C"] = C;
  report.details["C_required"] = report.measured * R / (1.0 + std::sqrt(kappa) * R);
  report.details["R"] = R;
  report.details["kappa"] = kappa;
  report.details["curvature_slack"] = slack;
  return report;
}

CheckReport check_global_sharp(const ModelSpace& space, const RadialField& v, double lambda,
                               PExponent p, double m)
{
  if (!std::isfinite(m))
    throw InvalidArgument("check_global_sharp: needs finite m");
  if (!(lambda >= 0.0))
    throw InvalidArgument("check_global_sharp: lambda must be >= 0");

  CheckReport report;
  report.name = "global_sharp_gradient";

  const double top = lambda_max(p, m);
  const double lambda_used = std::min(lambda, top);
  if (lambda > top)
    report.notes["lambda"] = "clamped to ((m-1)/p)^p: truncated eigenvalue lies above the "
                             "bottom spectrum bound";

  const double h = v.grid().spacing();
  const double tol = 0.02 + 100.0 * h * h;
  report.bound = sharp_root(p, m, lambda_used);
  report.measured = gradient_ratio(inner_part(v, 0.8)).max();
  report.margin = report.bound - report.measured;
  report.passed = report.measured <= report.bound * (1.0 + tol);

  if (space.kappa != 1.0) {
    report.hypothesis_ok = false;
    report.notes["kappa"] = "sharp estimate is stated for Ric_f^m >= -(m-1)";
  } else {
    const double slack = interval_slack(space, v.grid());
    report.hypothesis_ok = slack >= -hypothesis_tolerance(space);
    report.details["curvature_slack"] = slack;
  }
  report.details["lambda"] = lambda;
  report.details["lambda_used"] = lambda_used;
  report.details["lambda_max"] = top;
  report.details["tolerance"] = tol;
  report.details["ratio_to_bound"] = report.measured / report.bound;
  return report;
}

CheckReport check_global_sharp(const ModelSpace& space, const EigenResult& eig, PExponent p,
                               double m)
{
  return check_global_sharp(space, eig.eigenfield, eig.lambda, p, m);
}

CheckReport check_harnack(const RadialField& v, double R, double kappa, double calibration)
{
  if (!(R > 0.0) || !(kappa >= 0.0) || !(calibration >= 0.0))
    throw InvalidArgument("check_harnack: need R > 0, kappa >= 0, calibration >= 0");
  const RadialField inner = inner_part(v, 0.5);
  require_positive(inner, "check_harnack");

  const double growth = 1.0 + std::sqrt(kappa) * R;
  CheckReport report;
  report.name = "harnack";
  report.measured = std::log(inner.max()) - std::log(inner.min());
  report.bound = 2.0 * calibration * growth;
  report.margin = report.bound - report.measured;
  report.passed = report.measured <= report.bound;
  report.details["C_required"] = report.measured / growth;
  report.details["calibration"] = calibration;
  report.details["R"] = R;
  report.details["kappa"] = kappa;
  return report;
}

PiconeResult picone(const RadialField& u, const RadialField& v, PExponent p)
{
  require_same_grid(u, v);
  require_positive(v, "picone");
  for (std::size_t i = 0; i < u.size(); ++i)
    if (!(u[i] >= 0.0))
      throw InvalidArgument("picone: u must be nonnegative");

  const double pv = p.value();
  const RadialField du = derivative(u);
  const RadialField dv = derivative(v);
  std::vector<double> quotient_power(u.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    quotient_power[i] = std::pow(u[i], pv) / std::pow(v[i], pv - 1.0);
  const RadialField dw = derivative(RadialField(u.grid(), std::move(quotient_power)));

  std::vector<double> L(u.size()), Rv(u.size());
  double gap = 0.0;
  double min_L = std::numeric_limits<double>::infinity();
  double scale = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double q = u[i] / v[i];
    const double grad_u = std::pow(std::abs(du[i]), pv);
    const double flux_v = signed_pow(dv[i], pv - 1.0);  // |v'|^{p-2} v'
    const double second = (pv - 1.0) * std::pow(q, pv) * std::pow(std::abs(dv[i]), pv);
    L[i] = grad_u + second - pv * std::pow(q, pv - 1.0) * du[i] * flux_v;
    Rv[i] = grad_u - dw[i] * flux_v;
    gap = std::max(gap, std::abs(L[i] - Rv[i]));
    min_L = std::min(min_L, L[i]);
    scale = std::max(scale, grad_u + second);
  }
  return {RadialField(u.grid(), std::move(L)), RadialField(u.grid(), std::move(Rv)), gap, min_L,
          scale};
}

RadialField moser_potential(const RadialField& v, PExponent p)
{
  require_positive(v, "moser_potential");
  std::vector<double> u(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    u[i] = -(p.value() - 1.0) * std::log(v[i]);
  return RadialField(v.grid(), std::move(u));
}

MoserTrace moser_trace(const ModelSpace& space, const RadialField& u, PExponent p, double R,
                       double C_b0, double kappa, std::size_t kmax)
{
  if (space.n <= 2)
    throw InvalidArgument("moser_trace: the exponent ladder n/(n-2) needs n > 2");
  if (!(R > 0.0) || !(C_b0 > 0.0) || !(kappa >= 0.0) || kmax == 0)
    throw InvalidArgument("moser_trace: need R > 0, C_b0 > 0, kappa >= 0, kmax >= 1");

  const auto& grid = u.grid();
  const RadialField J = density(space, grid);
  const RadialField du = derivative(u);
  std::vector<double> squares(du.size());
  for (std::size_t i = 0; i < du.size(); ++i)
    squares[i] = du[i] * du[i];
  const RadialField h(grid, std::move(squares));
  const double ratio = static_cast<double>(space.n) / (space.n - 2.0);

  auto on_ball = [&](const RadialField& f, double r) {
    const auto [a, b] = clipped_ball(space, grid, r);
    return restrict(f, a, b);
  };
  auto volume = [&](double r) {
    const RadialField Jr = on_ball(J, r);
    return integrate_weighted(RadialField::constant(Jr.grid(), 1.0), Jr);
  };

  MoserTrace trace;
  trace.b0 = C_b0 * (1.0 + std::sqrt(kappa) * R);
  double b = trace.b0;
  for (std::size_t k = 0; k <= kmax; ++k) {
    if (k == 1)
      b = (trace.b0 + 0.5 * p.value()) * ratio;
    else if (k > 1)
      b *= ratio;
    const double radius = 0.5 * R + R / std::pow(4.0, static_cast<double>(k));
    const RadialField hk = on_ball(h, radius);
    trace.b_sequence.push_back(b);
    trace.ball_radii.push_back(radius);
    trace.norms.push_back(lp_norm(hk, on_ball(J, radius), b));
    trace.ball_sups.push_back(hk.max());
    trace.volumes.push_back(volume(radius));
  }
  trace.sup_inner = on_ball(h, 0.5 * R).max();

  const double b1 = (trace.b0 + 0.5 * p.value()) * ratio;
  const double norm_34 = lp_norm(on_ball(h, 0.75 * R), on_ball(J, 0.75 * R), b1);
  trace.d_fit =
      norm_34 * R * R / (trace.b0 * trace.b0 * std::exp(std::log(volume(R)) / b1));
  return trace;
}

CheckReport check_subsolution(const ModelSpace& space, PExponent p, double c, double lambda,
                              const RadialGrid& grid)
{
  if (space.kind != SpaceKind::LineWarped)
    throw UnsupportedGeometry("check_subsolution: the coordinate is a Busemann function only "
                              "on warped lines");
  const double pv = p.value();
  const RadialField w = RadialField::sample(grid, [c](double t) { return std::exp(-c * t); });
  const RadialField lap = apply_p_laplacian(space, w, p, 0.0);

  double lowest = std::numeric_limits<double>::infinity();
  double largest = 0.0;
  double drift = 0.0;
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const double power = std::pow(w[i], pv - 1.0);
    const double r = (lap[i] + lambda * power) / power;
    lowest = std::min(lowest, r);
    largest = std::max(largest, std::abs(r));
    drift = std::max(drift, std::abs(log_density_slope(space, grid.node(i))));
  }
  const double h = grid.spacing();
  const double scale =
      std::pow(std::abs(c), pv - 1.0) * (drift + (pv - 1.0) * std::abs(c)) + std::abs(lambda);
  const double tol = 100.0 * h * h * scale;

  CheckReport report;
  report.name = "subsolution";
  report.measured = lowest;
  report.bound = -tol;
  report.margin = report.measured - report.bound;
  report.passed = report.measured >= report.bound;
  report.details["c"] = c;
  report.details["lambda"] = lambda;
  report.details["max_abs_residual"] = largest;
  report.details["scale"] = scale;
  report.details["tolerance"] = tol;
  report.details["max_abs_log_density_slope"] = drift;
  return report;
}

CheckReport check_liouville_rate(const ModelSpace& space, PExponent p,
                                 std::span<const double> radii, const LiouvilleOptions& opts)
{
  if (radii.empty())
    throw InvalidArgument("check_liouville_rate: no radii");
  if (!(opts.offset > 0.0))
    throw InvalidArgument("check_liouville_rate: offset must be positive");

  CheckReport report;
  report.name = "liouville_rate";
  std::vector<double> products;
  double lowest_ricci = std::numeric_limits<double>::infinity();
  for (double R : radii) {
    if (!(R > 0.0))
      throw InvalidArgument("check_liouville_rate: radii must be positive");
    const auto [lo, hi] = space.kind == SpaceKind::BallRotSym ? std::pair{R, 3.0 * R}
                                                              : coordinate_ball(space, R);
    const RadialGrid grid(lo, hi, opts.npoints);
    const RadialField v = harmonic_radial(space, p, opts.flux, opts.offset, grid);
    const double measured = gradient_ratio(inner_part(v, 0.5)).max();
    products.push_back(measured * R);
    lowest_ricci = std::min(lowest_ricci, ricci_f_m_radial(space, grid).min());
    report.details[radius_key("ratio", R)] = measured;
  }

  report.measured = *std::max_element(products.begin(), products.end());
  report.bound = 2.0 * median(products);
  report.margin = report.bound - report.measured;
  report.passed = report.measured <= report.bound;
  report.hypothesis_ok = lowest_ricci >= -1e-8;
  report.details["min_ricci"] = lowest_ricci;
  report.details["median_product"] = median(products);
  return report;
}

bool all_passed(std::span<const CheckReport> reports)
{
  return std::all_of(reports.begin(), reports.end(),
                     [](const CheckReport& r) { return !r.hypothesis_ok || r.passed; });
}

}  // namespace wplab
