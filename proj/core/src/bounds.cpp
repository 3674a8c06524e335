#include "wplab/bounds.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "wplab/errors.hpp"

namespace wplab {

namespace {

void require_exponent(double p)
{
  if (!(p > 1.0) || !std::isfinite(p))
    throw InvalidArgument("need p > 1, got " + std::to_string(p));
}

void require_dimension(double m)
{
  if (!(m >= 1.0) || !std::isfinite(m))
    throw InvalidArgument("need finite m >= 1, got " + std::to_string(m));
}

// Root of an increasing function on [lo, hi] with f(lo) <= 0 <= f(hi):
// bisection to a tight bracket, then guarded Newton steps.
template <typename F, typename DF>
double bracketed_root(F&& f, DF&& df, double lo, double hi)
{
  double flo = f(lo);
  if (flo >= 0.0)
    return lo;
  if (f(hi) <= 0.0)
    return hi;
  for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0)
      return mid;
    if (fm < 0.0) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double y = 0.5 * (lo + hi);
  for (int it = 0; it < 3; ++it) {
    const double d = df(y);
    if (!(d > 0.0))
      break;
    const double next = y - f(y) / d;
    if (!(next >= lo && next <= hi))
      break;
    y = next;
  }
  return y;
}

void require_lambda_in_range(double p, double m, double lambda)
{
  if (!(lambda >= 0.0))
    throw OutOfRange("eigenvalue must be nonnegative, got " + std::to_string(lambda));
  const double top = lambda_max(p, m);
  if (lambda > top * (1.0 + 1e-14))
    throw OutOfRange("lambda = " + std::to_string(lambda) + " exceeds ((m-1)/p)^p = " +
                     std::to_string(top) +
                     "; no positive eigenfunction exists under Ric_f^m >= -(m-1)");
}

// lambda within a few ulps of the maximum: the double root itself.
bool at_maximum(double p, double m, double lambda)
{
  return lambda >= lambda_max(p, m) * (1.0 - 8.0 * std::numeric_limits<double>::epsilon());
}

}  // namespace

double lambda_max(double p, double m)
{
  require_exponent(p);
  require_dimension(m);
  return std::pow((m - 1.0) / p, p);
}

double sharp_root(double p, double m, double lambda)
{
  require_exponent(p);
  require_dimension(m);
  require_lambda_in_range(p, m, lambda);
  const double lo = (m - 1.0) / p;
  const double hi = (m - 1.0) / (p - 1.0);
  if (m == 1.0 || at_maximum(p, m, lambda))
    return lo;
  if (lambda == 0.0)
    return hi;

  auto g = [&](double y) {
    return (p - 1.0) * std::pow(y, p) - (m - 1.0) * std::pow(y, p - 1.0) + lambda;
  };
  auto dg = [&](double y) {
    return p * (p - 1.0) * std::pow(y, p - 1.0) - (m - 1.0) * (p - 1.0) * std::pow(y, p - 2.0);
  };
  return bracketed_root(g, dg, lo, hi);
}

double x_root(double p, double m, double lambda)
{
  require_exponent(p);
  require_dimension(m);
  require_lambda_in_range(p, m, lambda);
  const double lo = (p - 1.0) * (m - 1.0) / p;
  const double hi = m - 1.0;
  if (m == 1.0 || at_maximum(p, m, lambda))
    return lo * lo;
  if (lambda == 0.0)
    return hi * hi;

  const double shift = lambda * std::pow(p - 1.0, p - 1.0);
  auto k = [&](double s) { return std::pow(s, p) - (m - 1.0) * std::pow(s, p - 1.0) + shift; };
  auto dk = [&](double s) {
    return p * std::pow(s, p - 1.0) - (m - 1.0) * (p - 1.0) * std::pow(s, p - 2.0);
  };
  const double s = bracketed_root(k, dk, lo, hi);
  return s * s;
}

double model_lambda(double p, double m, double a)
{
  require_exponent(p);
  require_dimension(m);
  return (m - 1.0 - (p - 1.0) * a) * std::pow(a, p - 1.0);
}

bool model_rate_in_range(double p, double m, double a)
{
  return a >= (m - 1.0) / p && a <= (m - 1.0) / (p - 1.0);
}

double lambda_upper_lin(double p, double a)
{
  require_exponent(p);
  if (!(a >= 0.0))
    throw InvalidArgument("linear growth rate must be >= 0");
  return std::pow(a / p, p);
}

double lambda_upper_neg(double p, int n, double a)
{
  require_exponent(p);
  if (n < 2)
    throw InvalidArgument("lambda_upper_neg: need n >= 2");
  if (!(a >= 0.0))
    throw InvalidArgument("linear growth rate must be >= 0");
  return std::pow((n - 1.0 + a) / p, p);
}

SolitonLambda soliton_lambda(double p, double a, std::optional<double> grad_f_min)
{
  require_exponent(p);
  if (!(a > 0.0))
    throw InvalidArgument("soliton_lambda: need a > 0");
  const double value = std::pow(a / p, p);
  if (p < 2.0)
    return {value, true};
  const double threshold = a * std::sqrt((p - 2.0) / (p - 1.0));
  return {value, grad_f_min.value_or(0.0) >= threshold};
}

double local_bound(double kappa, double R, double C)
{
  if (!(R > 0.0) || !(C > 0.0) || !(kappa >= 0.0))
    throw InvalidArgument("local_bound: need R > 0, C > 0, kappa >= 0");
  return C * (1.0 + std::sqrt(kappa) * R) / R;
}

BoundSet compute_bounds(const BoundInputs& in)
{
  BoundSet out;
  out.inputs = in;
  out.lambda_max = lambda_max(in.p, in.m);
  out.p_harmonic_bound = (in.m - 1.0) / (in.p - 1.0);
  out.sharp_y = sharp_root(in.p, in.m, in.lambda);
  out.sharp_x = x_root(in.p, in.m, in.lambda);
  out.lambda_upper_lin = lambda_upper_lin(in.p, in.a);
  out.lambda_upper_neg = lambda_upper_neg(in.p, in.n, in.a);
  out.model_lambda = model_lambda(in.p, in.m, in.a);
  out.model_rate_in_range = model_rate_in_range(in.p, in.m, in.a);
  if (!out.model_rate_in_range)
    out.warnings.push_back("a outside [(m-1)/p, (m-1)/(p-1)]: model_lambda is not the "
                           "eigenvalue of a positive eigenfunction");
  if (in.a > 0.0) {
    const auto sol = soliton_lambda(in.p, in.a, in.grad_f_min);
    out.soliton_lambda = sol.value;
    out.soliton_valid = sol.valid;
  } else {
    out.warnings.push_back("a = 0: soliton normalization needs a > 0");
  }
  return out;
}

}  // namespace wplab
