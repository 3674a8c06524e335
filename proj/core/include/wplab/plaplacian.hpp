#pragma once

// Discrete weighted p-Laplacian on radial profiles and the first Dirichlet
// eigenpair of
//
//     Delta_{p,f} v = e^f div(e^{-f} |grad v|^{p-2} grad v) = -lambda |v|^{p-2} v.
//
// The operator is discretized in divergence form on a staggered grid,
//
//     (Delta_{p,f} v)_i = [J_{i+1/2} s(D v)_{i+1/2} - J_{i-1/2} s(D v)_{i-1/2}] / (h J_i),
//
// with s(x) = (x^2 + eps^2)^{(p-2)/2} x and J_{i+1/2} = sqrt(J_i J_{i+1}),
// which makes it exactly -1/(p h J_i) times the gradient of the discrete
// energy h sum_i J_{i+1/2} [(Dv_{i+1/2}^2 + eps^2)^{p/2} - eps^p].

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "wplab/geometry.hpp"
#include "wplab/mesh.hpp"

namespace wplab {

/// Exponent of the p-Laplacian, p > 1.
class PExponent
{
public:
  explicit PExponent(double p);
  double value() const noexcept { return p_; }
  operator double() const noexcept { return p_; }

private:
  double p_;
};

struct SolverOptions
{
  /// Gradient regularization.  Unset: 1e-8 times the gradient scale of the
  /// initial iterate.
  std::optional<double> eps;
  double tol_rel = 1e-9;
  std::size_t max_iters = 20000;
  /// First trial step along the preconditioned direction; 1 lands on the
  /// inverse iterate.
  double initial_step = 1.0;
  double backtrack = 0.5;
  /// Consecutive sub-tolerance decreases required to declare stagnation.
  std::size_t stagnation_window = 10;

  void validate() const;
};

struct EigenResult
{
  double lambda = 0.0;
  RadialField eigenfield;
  std::size_t iterations = 0;
  /// max |Delta_{p,f} v + lambda |v|^{p-2} v| / (lambda max |v|^{p-1}).
  double residual = 0.0;
  /// Stagnated with residual <= max(10 tol_rel, roundoff floor of the
  /// operator at v).  The floor only matters for p < 2 near the crest.
  bool converged = false;
  double eps = 0.0;
  /// Quotient after each accepted step (first entry: initial guess).
  /// Nonincreasing up to a relative roundoff of 1e-10.
  std::vector<double> history;
};

RadialField apply_p_laplacian(const ModelSpace& space, const RadialField& v, PExponent p,
                              double eps);

/// Same operator, with the density supplied (must share v's grid).
RadialField apply_p_laplacian(const RadialField& density, const RadialField& v, PExponent p,
                              double eps);

/// integral |v'|^p J / integral |v|^p J; the numerator uses the staggered
/// differences of the operator, the denominator the trapezoid rule.
double rayleigh_quotient(const ModelSpace& space, const RadialField& v, PExponent p);

/// Scaled residual of the eigen equation at interior nodes (see EigenResult).
double eigen_residual(const RadialField& density, const RadialField& v, PExponent p,
                      double lambda, double eps);

/// Minimize the discrete Rayleigh quotient over positive Dirichlet fields on
/// `grid` (>= 33 nodes).
///
/// Projected descent with Armijo backtracking.  The direction is the
/// displacement from v to the exact discrete inverse iterate w, the Dirichlet
/// solution of Delta_{p,f} w = -Q |v|^{p-2} v rescaled to unit p-mass; for
/// p = 2 this is the H^1-preconditioned gradient.  Once decreases fall below
/// what the quotient resolves, w is accepted directly.
EigenResult solve_first_eigen(const ModelSpace& space, const RadialGrid& grid, PExponent p,
                              const SolverOptions& opts = {});

struct SweepEntry
{
  double radius;
  EigenResult result;
};

/// One Dirichlet solve per radius on coordinate_ball(space, R), npoints
/// nodes each.  Radii must be strictly increasing.  Solves run concurrently;
/// the output is ordered by radius.
std::vector<SweepEntry> eigen_sweep(const ModelSpace& space, PExponent p,
                                    const std::vector<double>& radii, std::size_t npoints,
                                    const SolverOptions& opts = {});

/// True when lambda(R2) <= lambda(R1) * (1 + rel_tol) for consecutive radii.
bool is_nonincreasing(const std::vector<SweepEntry>& sweep, double rel_tol);

/// Radial weighted p-harmonic function, (J |v'|^{p-2} v')' = 0 with
/// J |v'|^{p-2} v' = flux.
///
/// flux >= 0: v(t) = offset + integral_{lo}^{t} (flux/J)^{1/(p-1)}.
/// flux <  0: v(t) = offset + integral_{t}^{inf} (|flux|/J)^{1/(p-1)}, i.e.
///            offset is the limit at +infinity; when that tail diverges (or
///            the profile is tabulated) the anchor is v(hi) = offset.
RadialField harmonic_radial(const ModelSpace& space, PExponent p, double flux, double offset,
                            const RadialGrid& grid);

}  // namespace wplab
