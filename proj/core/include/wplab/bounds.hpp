#pragma once

// Closed-form eigenvalue bounds and the root equations behind the sharp
// gradient estimates.

#include <optional>
#include <string>
#include <vector>

namespace wplab {

/// ((m-1)/p)^p, the largest possible bottom spectrum under Ric_f^m >= -(m-1).
double lambda_max(double p, double m);

/// Larger positive root y of (p-1) y^p - (m-1) y^{p-1} + lambda = 0.
///
/// The polynomial has two positive roots for 0 < lambda < lambda_max; the
/// larger one is the gradient bound (it equals (m-1)/(p-1) at lambda = 0 and
/// (m-1)/p at lambda = lambda_max).  Throws OutOfRange for lambda outside
/// [0, lambda_max].
double sharp_root(double p, double m, double lambda);

/// Largest positive root x of x^{p/2} - (m-1) x^{(p-1)/2} + lambda (p-1)^{p-1} = 0,
/// solved on its own in s = sqrt(x).
double x_root(double p, double m, double lambda);

/// (m-1-(p-1)a) a^{p-1}: eigenvalue of v = e^{-at} on the warped line model.
double model_lambda(double p, double m, double a);

/// True when (m-1)/p <= a <= (m-1)/(p-1).
bool model_rate_in_range(double p, double m, double a);

/// (a/p)^p, upper bound when Ric_f >= 0 and f grows at most like a r.
double lambda_upper_lin(double p, double a);

/// ((n-1+a)/p)^p, upper bound when Ric_f >= -(n-1) and f grows like a r.
double lambda_upper_neg(double p, int n, double a);

struct SolitonLambda
{
  double value;
  bool valid;
};

/// a^p / p^p on a gradient steady soliton with |grad f|^2 + S = a^2; valid
/// for 1 < p < 2, or p >= 2 with |grad f| >= a sqrt((p-2)/(p-1)).  A missing
/// gradient minimum is treated as 0.
SolitonLambda soliton_lambda(double p, double a, std::optional<double> grad_f_min = {});

/// C (1 + sqrt(kappa) R) / R.
double local_bound(double kappa, double R, double C);

struct BoundInputs
{
  double p = 2.0;
  int n = 2;
  double m = 2.0;
  double a = 0.0;
  double lambda = 0.0;
  double kappa = 1.0;
  std::optional<double> grad_f_min;
};

struct BoundSet
{
  BoundInputs inputs;
  double lambda_max = 0.0;
  double p_harmonic_bound = 0.0;
  double sharp_y = 0.0;
  double sharp_x = 0.0;
  double lambda_upper_lin = 0.0;
  double lambda_upper_neg = 0.0;
  double model_lambda = 0.0;
  bool model_rate_in_range = false;
  double soliton_lambda = 0.0;
  bool soliton_valid = false;
  std::vector<std::string> warnings;
};

/// Evaluates every bound.  Throws OutOfRange if inputs.lambda > lambda_max.
BoundSet compute_bounds(const BoundInputs& in);

}  // namespace wplab
