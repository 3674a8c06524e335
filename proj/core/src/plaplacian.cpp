#include "wplab/plaplacian.hpp"

#include <algorithm>
#include <cstdint>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "wplab/errors.hpp"

namespace wplab {

PExponent::PExponent(double p) : p_(p)
{
  if (!(p > 1.0) || !std::isfinite(p))
    throw InvalidArgument("p-Laplacian exponent must satisfy p > 1, got " + std::to_string(p));
}

void SolverOptions::validate() const
{
  if (eps && !(*eps >= 0.0))
    throw InvalidArgument("solver: eps must be >= 0");
  if (!(tol_rel > 0.0))
    throw InvalidArgument("solver: tol_rel must be > 0");
  if (max_iters == 0)
    throw InvalidArgument("solver: max_iters must be positive");
  if (!(initial_step > 0.0))
    throw InvalidArgument("solver: initial_step must be > 0");
  if (!(backtrack > 0.0 && backtrack < 1.0))
    throw InvalidArgument("solver: backtrack factor must lie in (0, 1)");
  if (stagnation_window == 0)
    throw InvalidArgument("solver: stagnation window must be positive");
}

namespace {

// Staggered discretization shared by the operator, the quotient and the
// solver.  J_mid[i] sits between nodes i and i+1.
class Stencil
{
public:
  Stencil(const RadialField& density, double p, double eps)
      : h_(density.grid().spacing()), p_(p), eps_(eps),
        J_(density.values().begin(), density.values().end()), Jmid_(J_.size() - 1)
  {
    for (std::size_t i = 0; i + 1 < J_.size(); ++i)
      Jmid_[i] = std::sqrt(J_[i] * J_[i + 1]);
    eps_p_ = eps_ > 0.0 ? std::pow(eps_, p_) : 0.0;
  }

  std::size_t size() const { return J_.size(); }
  double h() const { return h_; }
  double J(std::size_t i) const { return J_[i]; }
  double Jmid(std::size_t i) const { return Jmid_[i]; }

  // s(x) = (x^2 + eps^2)^{(p-2)/2} x
  double sigma(double x) const
  {
    if (p_ == 2.0)
      return x;
    if (eps_ == 0.0) {
      if (x == 0.0) {
        if (p_ < 2.0)
          throw SingularityError(
              "p-Laplacian with p < 2 and eps = 0 hit a vanishing gradient; use eps > 0");
        return 0.0;
      }
      return std::pow(std::abs(x), p_ - 2.0) * x;
    }
    return std::pow(x * x + eps_ * eps_, 0.5 * (p_ - 2.0)) * x;
  }

  // (x^2 + eps^2)^{(p-2)/2}, the frozen coefficient of the linearization.
  double coefficient(double x) const
  {
    if (p_ == 2.0)
      return 1.0;
    return std::pow(x * x + eps_ * eps_, 0.5 * (p_ - 2.0));
  }

  // d sigma / dx; infinite at x = 0 when p < 2 and eps = 0.
  double sigma_slope(double x) const
  {
    if (p_ == 2.0)
      return 1.0;
    const double base = x * x + eps_ * eps_;
    if (base == 0.0)
      return p_ < 2.0 ? std::numeric_limits<double>::infinity() : 0.0;
    return std::pow(base, 0.5 * (p_ - 4.0)) * ((p_ - 1.0) * x * x + eps_ * eps_);
  }

  // Inverse of sigma, which is odd and strictly increasing.
  double sigma_inverse(double y) const
  {
    if (p_ == 2.0 || y == 0.0)
      return y;
    const double a = std::abs(y);
    const double power_root = std::pow(a, 1.0 / (p_ - 1.0));
    double s = power_root;
    if (eps_ > 0.0) {
      double lo = 0.0;
      double hi = 0.0;
      if (p_ > 2.0) {
        hi = std::min(power_root, a * std::pow(eps_, 2.0 - p_));
      } else {
        lo = std::max(power_root, a * std::pow(eps_, 2.0 - p_));
        hi = std::max(eps_, std::pow(2.0, (2.0 - p_) / (2.0 * (p_ - 1.0))) * power_root);
        lo = std::min(lo, hi);
      }
      auto f = [&](double x) {
        const double base = x * x + eps_ * eps_;
        const double value = std::pow(base, 0.5 * (p_ - 2.0)) * x - a;
        const double slope = std::pow(base, 0.5 * (p_ - 4.0)) * ((p_ - 1.0) * x * x + eps_ * eps_);
        return std::make_pair(value, slope);
      };
      std::uintmax_t iters = 100;
      s = boost::math::tools::newton_raphson_iterate(f, std::clamp(power_root, lo, hi), lo, hi,
                                                     std::numeric_limits<double>::digits - 4,
                                                     iters);
    }
    return y > 0.0 ? s : -s;
  }

  double energy_density(double x) const
  {
    if (p_ == 2.0)
      return x * x;
    if (eps_ == 0.0)
      return std::pow(std::abs(x), p_);
    return std::pow(x * x + eps_ * eps_, 0.5 * p_) - eps_p_;
  }

  double slope(std::span<const double> v, std::size_t i) const
  {
    return (v[i + 1] - v[i]) / h_;
  }

  double energy(std::span<const double> v) const
  {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
      sum += Jmid_[i] * energy_density(slope(v, i));
    return sum * h_;
  }

  // Trapezoid mass of |v|^p.
  double mass(std::span<const double> v) const
  {
    const std::size_t n = v.size();
    double sum = 0.5 * (J_[0] * pw(v[0]) + J_[n - 1] * pw(v[n - 1]));
    for (std::size_t i = 1; i + 1 < n; ++i)
      sum += J_[i] * pw(v[i]);
    return sum * h_;
  }

  // |x|^p and |x|^{p-2} x
  double pw(double x) const { return p_ == 2.0 ? x * x : std::pow(std::abs(x), p_); }
  double pw1(double x) const
  {
    if (p_ == 2.0)
      return x;
    if (x == 0.0)
      return 0.0;
    return std::pow(std::abs(x), p_ - 1.0) * (x > 0.0 ? 1.0 : -1.0);
  }

  // Divergence-form operator at interior nodes; endpoints copy neighbours.
  std::vector<double> apply(std::span<const double> v) const
  {
    const std::size_t n = v.size();
    std::vector<double> flux(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
      flux[i] = Jmid_[i] * sigma(slope(v, i));
    std::vector<double> out(n);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (!(J_[i] > 0.0))
        throw InvalidArgument("p-Laplacian: density must be positive at interior nodes");
      out[i] = (flux[i] - flux[i - 1]) / (h_ * J_[i]);
    }
    out[0] = out[1];
    out[n - 1] = out[n - 2];
    return out;
  }

private:
  double h_;
  double p_;
  double eps_;
  double eps_p_ = 0.0;
  std::vector<double> J_;
  std::vector<double> Jmid_;
};

double scaled_residual(const Stencil& st, std::span<const double> v, double lambda)
{
  const auto lap = st.apply(v);
  double worst = 0.0;
  double scale = 0.0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const double term = st.pw1(v[i]);
    worst = std::max(worst, std::abs(lap[i] + lambda * term));
    scale = std::max(scale, std::abs(term));
  }
  if (scale == 0.0 || lambda == 0.0)
    return worst;
  return worst / (std::abs(lambda) * scale);
}

// Scaled residual produced by perturbing v by a few ulps of its peak.  Where
// sigma is steep (p < 2 near a crest) this floor exceeds any fixed tolerance.
double residual_floor(const Stencil& st, std::span<const double> v, double lambda)
{
  double peak = 0.0;
  for (double x : v)
    peak = std::max(peak, std::abs(x));
  const double h = st.h();
  const double jitter = 4.0 * std::numeric_limits<double>::epsilon() * peak;
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const double gain = st.Jmid(i - 1) * st.sigma_slope(st.slope(v, i - 1)) +
                        st.Jmid(i) * st.sigma_slope(st.slope(v, i));
    worst = std::max(worst, gain * jitter / (h * h * st.J(i)));
  }
  const double scale = std::abs(lambda) * st.pw(peak) / peak;
  return scale > 0.0 ? worst / scale : worst;
}

// One step of discrete nonlinear inverse iteration: the Dirichlet field w with
// (Delta_{p,f} w)_i = -lambda |v_i|^{p-2} v_i at every interior node.  In one
// dimension the fluxes are partial sums of the source, so only the flux
// through the first cell is unknown; it is fixed by w(hi) = 0.
bool inverse_step(const Stencil& st, std::span<const double> v, double lambda,
                  std::vector<double>& w)
{
  const std::size_t n = v.size();
  const double h = st.h();
  std::vector<double> source(n - 1, 0.0);  // h sum_{j<=i} J_j lambda v_j^{p-1}
  for (std::size_t i = 1; i + 1 < n; ++i)
    source[i] = source[i - 1] + h * st.J(i) * lambda * st.pw1(v[i]);
  const double top = source[n - 2];
  if (!(top > 0.0) || !std::isfinite(top))
    return false;

  auto endpoint = [&](double c) {
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i)
      sum += st.sigma_inverse((c - source[i]) / st.Jmid(i));
    return sum;
  };
  std::uintmax_t iters = 200;
  const auto [lo, hi] = boost::math::tools::toms748_solve(
      endpoint, 0.0, top, boost::math::tools::eps_tolerance<double>(), iters);
  const double c = 0.5 * (lo + hi);

  // Slopes are positive up to the crest and negative after it; summing each
  // side from its own endpoint keeps every partial sum one-signed, so w stays
  // accurate relative to itself where it is many orders below its peak.
  std::vector<double> slope(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i)
    slope[i] = st.sigma_inverse((c - source[i]) / st.Jmid(i));
  std::size_t crest = 0;
  while (crest + 1 < n && slope[crest] > 0.0)
    ++crest;
  w.assign(n, 0.0);
  for (std::size_t i = 0; i < crest; ++i)
    w[i + 1] = w[i] + h * slope[i];
  for (std::size_t i = n - 1; i-- > crest + 1;)
    w[i] = w[i + 1] - h * slope[i];
  double peak = 0.0;
  for (double x : w)
    peak = std::max(peak, x);
  if (!(peak > 0.0))
    return false;
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (w[i] <= 0.0)
      w[i] = 1e-14 * peak;
  return true;
}

void require_positive_density(const RadialField& J)
{
  for (std::size_t i = 0; i < J.size(); ++i)
    if (!(J[i] > 0.0))
      throw InvalidArgument("density must be positive on the solver interval (node " +
                            std::to_string(i) + ")");
}

}  // namespace

RadialField apply_p_laplacian(const RadialField& density, const RadialField& v, PExponent p,
                              double eps)
{
  require_same_grid(density, v);
  if (!(eps >= 0.0))
    throw InvalidArgument("apply_p_laplacian: eps must be >= 0");
  const Stencil st(density, p, eps);
  return RadialField(v.grid(), st.apply(v.values()));
}

RadialField apply_p_laplacian(const ModelSpace& space, const RadialField& v, PExponent p,
                              double eps)
{
  return apply_p_laplacian(density(space, v.grid()), v, p, eps);
}

double rayleigh_quotient(const ModelSpace& space, const RadialField& v, PExponent p)
{
  const Stencil st(density(space, v.grid()), p, 0.0);
  const double denom = st.mass(v.values());
  if (!(denom > 0.0))
    throw InvalidArgument("rayleigh_quotient: field has zero weighted p-mass");
  return st.energy(v.values()) / denom;
}

double eigen_residual(const RadialField& density, const RadialField& v, PExponent p,
                      double lambda, double eps)
{
  require_same_grid(density, v);
  const Stencil st(density, p, eps);
  return scaled_residual(st, v.values(), lambda);
}

EigenResult solve_first_eigen(const ModelSpace& space, const RadialGrid& grid, PExponent p,
                              const SolverOptions& opts)
{
  opts.validate();
  if (grid.size() < 33)
    throw InvalidArgument("solve_first_eigen: need at least 33 nodes");

  const RadialField J = density(space, grid);
  require_positive_density(J);

  const std::size_t n = grid.size();
  const double h = grid.spacing();
  const double pv = p.value();

  // Positive Dirichlet sine bump.
  std::vector<double> v(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i)
    v[i] = std::sin(std::numbers::pi * static_cast<double>(i) / static_cast<double>(n - 1));

  auto normalize = [&](std::vector<double>& x, const Stencil& st) {
    const double mass = st.mass(x);
    if (!(mass > 0.0) || !std::isfinite(mass))
      throw NumericalError("solve_first_eigen: iterate lost its mass");
    const double s = std::pow(mass, -1.0 / pv);
    for (double& xi : x)
      xi *= s;
  };

  double eps = 0.0;
  {
    const Stencil probe(J, pv, 0.0);
    normalize(v, probe);
    if (opts.eps) {
      eps = *opts.eps;
    } else {
      double scale = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i)
        scale = std::max(scale, std::abs(probe.slope(v, i)));
      eps = 1e-8 * scale;
    }
  }
  const Stencil st(J, pv, eps);
  normalize(v, st);

  auto quotient = [&](std::span<const double> x) {
    const double q = st.energy(x) / st.mass(x);
    if (!std::isfinite(q))
      throw NumericalError("solve_first_eigen: non-finite Rayleigh quotient");
    return q;
  };

  EigenResult result{.eigenfield = RadialField::constant(grid, 0.0), .history = {}};
  result.eps = eps;

  double Q = quotient(v);
  result.history.push_back(Q);

  std::vector<double> grad(n, 0.0), dir(n, 0.0), target(n, 0.0), trial(n, 0.0);
  const double armijo = 1e-4;
  // Relative rise of the quotient attributed to summation roundoff.
  const double roundoff = 1e-10;
  std::size_t quiet_steps = 0;
  double residual = std::numeric_limits<double>::infinity();
  double checkpoint = residual;
  std::size_t since_checkpoint = 0;
  std::size_t iter = 0;

  auto accept = [&] {
    normalize(trial, st);
    v.swap(trial);
    const double Q_new = quotient(v);
    const double decrease = (Q - Q_new) / std::abs(Q);
    Q = Q_new;
    result.history.push_back(Q);
    quiet_steps = decrease < opts.tol_rel ? quiet_steps + 1 : 0;
  };

  for (; iter < opts.max_iters; ++iter) {
    residual = scaled_residual(st, v, Q);
    if (quiet_steps >= opts.stagnation_window &&
        residual <= std::max(10.0 * opts.tol_rel, residual_floor(st, v, Q))) {
      result.converged = true;
      break;
    }
    // Stationary quotient and a residual that no longer halves: give up.
    if (residual < 0.5 * checkpoint) {
      checkpoint = residual;
      since_checkpoint = 0;
    } else if (++since_checkpoint >= 50 * opts.stagnation_window &&
               quiet_steps >= opts.stagnation_window) {
      break;
    }

    // Gradient of Q at mass 1: p (A(v) v - Q M(v) v) with M = diag(h J |v|^{p-2}).
    for (std::size_t i = 1; i + 1 < n; ++i) {
      const double flux_l = st.Jmid(i - 1) * st.sigma(st.slope(v, i - 1));
      const double flux_r = st.Jmid(i) * st.sigma(st.slope(v, i));
      grad[i] = pv * ((flux_l - flux_r) - Q * h * st.J(i) * st.pw1(v[i]));
    }

    // Preconditioned direction: displacement to the inverse iterate, which
    // for p = 2 is the Sobolev gradient A^{-1} grad / p.
    if (!inverse_step(st, v, Q, target))
      throw NumericalError("solve_first_eigen: inverse step lost positivity");
    normalize(target, st);
    double slope = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      dir[i] = v[i] - target[i];
      slope += grad[i] * dir[i];
    }

    // Backtracking on Q along the projected path.  Below the quotient's
    // resolution the inverse iterate is taken as is.
    bool accepted = false;
    if (armijo * slope > 1e-15 * std::abs(Q)) {
      for (double alpha = opts.initial_step; alpha > 1e-14; alpha *= opts.backtrack) {
        double top = 0.0;
        for (std::size_t i = 1; i + 1 < n; ++i) {
          trial[i] = v[i] - alpha * dir[i];
          top = std::max(top, trial[i]);
        }
        if (top <= 0.0)
          continue;
        for (std::size_t i = 1; i + 1 < n; ++i)
          if (trial[i] <= 0.0)
            trial[i] = 1e-14 * top;
        if (quotient(trial) <= Q - armijo * alpha * slope) {
          accepted = true;
          break;
        }
      }
    }
    if (!accepted) {
      trial = target;
      if (quotient(trial) > Q * (1.0 + roundoff))
        break;
    }
    accept();
  }

  residual = scaled_residual(st, v, Q);
  if (!result.converged)
    result.converged = quiet_steps >= opts.stagnation_window &&
                       residual <= std::max(10.0 * opts.tol_rel, residual_floor(st, v, Q));

  double top = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i)
    top = std::max(top, v[i]);
  if (!(top > 0.0))
    throw NumericalError("solve_first_eigen: iterate is not positive (degenerate geometry)");

  result.lambda = Q;
  result.residual = residual;
  result.iterations = iter;
  result.eigenfield = RadialField(grid, std::move(v));
  return result;
}

std::vector<SweepEntry> eigen_sweep(const ModelSpace& space, PExponent p,
                                    const std::vector<double>& radii, std::size_t npoints,
                                    const SolverOptions& opts)
{
  if (radii.empty())
    throw InvalidArgument("eigen_sweep: no radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0))
      throw InvalidArgument("eigen_sweep: radii must be positive");
    if (i > 0 && !(radii[i] > radii[i - 1]))
      throw InvalidArgument("eigen_sweep: radii must be strictly increasing");
  }

  std::vector<std::future<EigenResult>> jobs;
  jobs.reserve(radii.size());
  for (double R : radii) {
    const auto [lo, hi] = coordinate_ball(space, R);
    const RadialGrid grid(lo, hi, npoints);
    jobs.push_back(std::async(std::launch::async, [&space, grid, p, &opts] {
      return solve_first_eigen(space, grid, p, opts);
    }));
  }

  std::vector<SweepEntry> out;
  out.reserve(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i)
    out.push_back({radii[i], jobs[i].get()});
  return out;
}

bool is_nonincreasing(const std::vector<SweepEntry>& sweep, double rel_tol)
{
  for (std::size_t i = 1; i < sweep.size(); ++i)
    if (sweep[i].result.lambda > sweep[i - 1].result.lambda * (1.0 + rel_tol))
      return false;
  return true;
}

RadialField harmonic_radial(const ModelSpace& space, PExponent p, double flux, double offset,
                            const RadialGrid& grid)
{
  if (!std::isfinite(flux) || !std::isfinite(offset))
    throw InvalidArgument("harmonic_radial: flux and offset must be finite");
  const std::size_t n = grid.size();
  if (flux == 0.0)
    return RadialField::constant(grid, offset);

  const double pv = p.value();
  const double log_flux = std::log(std::abs(flux));
  auto integrand = [&](double t) {
    const double J = density_value(space, t);
    if (!(J > 0.0))
      throw InvalidArgument("harmonic_radial: density must be positive on the interval");
    return std::exp((log_flux - std::log(J)) / (pv - 1.0));
  };

  // Exact-to-rounding cell integrals with 10-point Gauss-Legendre.
  using Gauss = boost::math::quadrature::gauss<double, 10>;
  std::vector<double> cell(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i)
    cell[i] = Gauss::integrate(integrand, grid.node(i), grid.node(i + 1));

  std::vector<double> v(n);
  if (flux > 0.0) {
    v[0] = offset;
    for (std::size_t i = 1; i < n; ++i)
      v[i] = v[i - 1] + cell[i - 1];
    return RadialField(grid, std::move(v));
  }

  double tail = 0.0;
  const bool analytic = space.warp.tag() != ProfileSpec::Tag::Tabulated &&
                        space.weight.tag() != ProfileSpec::Tag::Tabulated;
  if (analytic) {
    try {
      boost::math::quadrature::exp_sinh<double> integrator;
      double error = 0.0;
      double l1 = 0.0;
      const double value = integrator.integrate(integrand, grid.hi(),
                                                std::numeric_limits<double>::infinity(),
                                                1e-12, &error, &l1);
      if (std::isfinite(value) && error <= 1e-8 * std::max(std::abs(value), 1e-300))
        tail = value;
    } catch (const std::exception&) {
      tail = 0.0;  // divergent tail: anchor at hi
    }
  }
  v[n - 1] = offset + tail;
  for (std::size_t i = n - 1; i-- > 0;)
    v[i] = v[i + 1] + cell[i];
  return RadialField(grid, std::move(v));
}

}  // namespace wplab
