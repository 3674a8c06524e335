#pragma once

// Numerical checks of gradient, Harnack, Picone and Liouville-type estimates
// against computed or sampled radial fields.
//
// Interior sub-intervals are always taken about the midpoint of the field's
// own interval: the "inner half" is the middle half of it, the "inner 80%"
// the middle four fifths.  This keeps Dirichlet boundary layers out of
// statements that are interior estimates.

#include <cstddef>
#include <span>
#include <vector>

#include "wplab/geometry.hpp"
#include "wplab/mesh.hpp"
#include "wplab/plaplacian.hpp"
#include "wplab/report.hpp"

namespace wplab {

/// |v'|/v nodewise, computed as |(log v)'| so exponential profiles are
/// differentiated exactly.  Throws InvalidArgument unless v > 0 everywhere.
RadialField gradient_ratio(const RadialField& v);

/// Middle fraction of the field's interval, e.g. 0.5 for the inner half.
RadialField inner_part(const RadialField& field, double fraction);

/// sup |v'|/v over the inner half; bound C (1 + sqrt(kappa) R) / R with
/// kappa from the space.  details: C_required = measured R / (1 + sqrt(kappa) R).
CheckReport check_local_gradient_estimate(const ModelSpace& space, const EigenResult& eig,
                                          double R, double C);

/// sup |v'|/v over the inner 80% against the sharp root at lambda, with
/// relative tolerance 2% + 100 h^2.  A lambda above ((m-1)/p)^p (possible for
/// Dirichlet truncations) is clamped to it and flagged in the notes.
/// Needs kappa == 1; otherwise the report is hypothesis-failed.
CheckReport check_global_sharp(const ModelSpace& space, const RadialField& v, double lambda,
                               PExponent p, double m);
CheckReport check_global_sharp(const ModelSpace& space, const EigenResult& eig, PExponent p,
                               double m);

/// log(sup v / inf v) over the inner half; passes iff
/// C_required = measured / (1 + sqrt(kappa) R) is at most twice `calibration`.
CheckReport check_harnack(const RadialField& v, double R, double kappa, double calibration);

struct PiconeResult
{
  RadialField L;
  RadialField R;
  double max_gap;
  double min_L;
  /// max of |u'|^p + (p-1)(u/v)^p |v'|^p, the size of the terms in L.
  double scale;
};

/// Both sides of the Picone identity from discrete derivatives of u, v and
/// u^p / v^(p-1).  Requires v > 0, u >= 0 on a shared grid.
PiconeResult picone(const RadialField& u, const RadialField& v, PExponent p);

struct MoserTrace
{
  double b0 = 0.0;
  std::vector<double> b_sequence;
  std::vector<double> ball_radii;
  /// Weighted L^{b_k}(B_k) norms of h = (u')^2.
  std::vector<double> norms;
  /// sup of h over B_k and the weighted volume of B_k.
  std::vector<double> ball_sups;
  std::vector<double> volumes;
  /// sup of h over B_{R/2}.
  double sup_inner = 0.0;
  /// ||h||_{L^{b_1}(B_{3R/4})} R^2 / (b0^2 V_f(B_R)^{1/b_1}).
  double d_fit = 0.0;
};

/// u = -(p-1) log v.
RadialField moser_potential(const RadialField& v, PExponent p);

/// Norm ladder b0 = C_b0 (1 + sqrt(kappa) R), b1 = (b0 + p/2) n/(n-2),
/// b_{k+1} = b_k n/(n-2) on the balls B_k of radius R/2 + R/4^k, k = 0..kmax,
/// intersected with the field's interval.  Requires n > 2.
MoserTrace moser_trace(const ModelSpace& space, const RadialField& u, PExponent p, double R,
                       double C_b0, double kappa, std::size_t kmax);

/// Delta_{p,f} w + lambda w^(p-1) for w = exp(-c t) on a warped line, divided
/// by w^(p-1) node by node.  measured = its minimum; passes iff
/// measured >= -100 h^2 scale with scale = c^(p-1) max|(log J)'| + |lambda|.
CheckReport check_subsolution(const ModelSpace& space, PExponent p, double c, double lambda,
                              const RadialGrid& grid);

struct LiouvilleOptions
{
  /// Flux and offset of the p-harmonic probe field; offset > 0 keeps it
  /// positive and bounded.
  double flux = 1.0;
  double offset = 1.0;
  std::size_t npoints = 2001;
};

/// For each radius, a positive bounded p-harmonic field on the coordinate
/// ball (on [R, 3R] for ball models, away from the pole); measured(R) is its
/// sup inner-half gradient ratio.  Passes iff max R measured(R) is at most
/// twice the median of R measured(R).  Hypothesis: Ric_f^m >= 0 on every
/// interval.
CheckReport check_liouville_rate(const ModelSpace& space, PExponent p,
                                 std::span<const double> radii,
                                 const LiouvilleOptions& opts = {});

/// True iff every report whose hypotheses hold has passed.
bool all_passed(std::span<const CheckReport> reports);

}  // namespace wplab
