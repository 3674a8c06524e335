#pragma once

// 1D-reducible smooth metric measure spaces.
//
// A model space is described by a warp profile phi(t) and a weight f(t).
// The radial density of the weighted measure is
//
//     J(t) = phi(t)^(n-1) * exp(-f(t)),
//
// with the cross-section (unit sphere, or the fiber N of a warped line)
// normalized to unit volume.  Radial functions then satisfy
//
//     Delta_f u = u'' + (log J)' u',
//
// which is all the p-Laplacian code needs.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wplab/mesh.hpp"
#include "wplab/report.hpp"

namespace wplab {

/// Closed-form or tabulated scalar profile with two derivatives.
class ProfileSpec
{
public:
  enum class Tag
  {
    Exponential,  ///< A * exp(c t);   params {c, A=1}
    Sinh,         ///< A * sinh(c t);  params {c, A=1}
    Linear,       ///< c t + d;        params {c, d=0}
    PowerOfT,     ///< A * t^k;        params {k, A=1}
    Tabulated     ///< piecewise-linear interpolation of a sampled field
  };

  static ProfileSpec exponential(double rate, double amplitude = 1.0);
  static ProfileSpec sinh(double rate, double amplitude = 1.0);
  static ProfileSpec linear(double slope, double intercept = 0.0);
  static ProfileSpec power(double exponent, double amplitude = 1.0);
  static ProfileSpec constant(double c) { return linear(0.0, c); }
  static ProfileSpec tabulated(RadialField table);

  /// Build from a tag and a parameter list as found in scenario configs.
  static ProfileSpec from_params(Tag tag, const std::vector<double>& params);

  Tag tag() const noexcept { return tag_; }
  const std::vector<double>& params() const noexcept { return params_; }
  const std::optional<RadialField>& table() const noexcept { return table_; }

  double value(double t) const;
  double first(double t) const;
  double second(double t) const;

  /// Identically constant (Linear with zero slope, or exponent-zero power).
  bool is_constant() const;

  /// Coordinate range on which the profile may be evaluated.
  std::pair<double, double> domain() const;

  RadialField sample(const RadialGrid& grid) const;

private:
  ProfileSpec(Tag tag, std::vector<double> params);

  Tag tag_;
  std::vector<double> params_;
  std::optional<RadialField> table_;
  std::optional<RadialField> table_d1_;
  std::optional<RadialField> table_d2_;
};

std::string to_string(ProfileSpec::Tag tag);
ProfileSpec::Tag profile_tag_from_string(const std::string& name);

enum class SpaceKind
{
  LineWarped,    ///< R x N, ds^2 = dt^2 + phi(t)^2 ds_N^2
  BallRotSym,    ///< ds^2 = dr^2 + phi(r)^2 ds_{S^{n-1}}^2, phi(0)=0, phi'(0)=1
  CustomDensity  ///< arbitrary positive radial density; n may be 1
};

std::string to_string(SpaceKind kind);
SpaceKind space_kind_from_string(const std::string& name);

struct ModelSpace
{
  SpaceKind kind = SpaceKind::LineWarped;
  int n = 2;
  /// Bakry-Emery dimension.  +infinity selects Ric_f = Ric + Hess f.
  double m = 2.0;
  double kappa = 1.0;
  ProfileSpec warp = ProfileSpec::exponential(1.0);
  ProfileSpec weight = ProfileSpec::constant(0.0);

  /// Throws InvalidArgument when the dimension/weight invariants fail.
  void validate() const;

  /// m == n (only allowed with constant weight): the (f')^2/(m-n) term is
  /// dropped.
  bool unweighted_dimension() const;
};

/// Warped line R x N with phi = e^t and f = -(m-n) t.  Ric_f^m = -(m-1).
ModelSpace line_model(int n, double m);

/// Warped line with phi = e^t and an arbitrary linear weight f = slope * t.
ModelSpace line_model_with_weight(int n, double m, double weight_slope);

/// Rotationally symmetric model of constant curvature -kappa (kappa > 0),
/// or flat space when kappa == 0; f == 0 and m == n.
ModelSpace space_form_ball(int n, double kappa);

/// Constant-density line (J == c); n = m = 1.
ModelSpace flat_density(double c = 1.0);

/// Coordinate interval used as the "ball of radius r" about the base point:
/// [-r, r] for warped lines, [0, r] for rotationally symmetric balls and
/// custom densities.
std::pair<double, double> coordinate_ball(const ModelSpace& space, double r);

/// Log-derivative (log J)' = (n-1) phi'/phi - f' at a coordinate.
double log_density_slope(const ModelSpace& space, double t);

/// J(t) at a single coordinate.
double density_value(const ModelSpace& space, double t);

/// J = phi^(n-1) e^{-f} sampled on the grid.  phi must be positive except
/// at the pole r = 0 of a ball model, where J = 0.
RadialField density(const ModelSpace& space, const RadialGrid& grid);

/// Radial Bakry-Emery curvature Ric_f^m(d_t, d_t)
///   = -(n-1) phi''/phi + f'' - (f')^2/(m-n).
RadialField ricci_f_m_radial(const ModelSpace& space, const RadialGrid& grid);

/// Weighted volume of coordinate_ball(space, r), by adaptive quadrature.
double weighted_volume(const ModelSpace& space, double r);

/// integral_0^r sinh^(m-1)(s) ds (unit-sphere constant omitted).
double hyperbolic_model_volume(double m, double r);

/// Model volume for curvature -kappa: integral_0^r sn_kappa(s)^(m-1) ds.
double comparison_model_volume(double m, double kappa, double r);

/// Relative volume comparison V_f(r2)/V_f(r1) <= V_kappa(r2)/V_kappa(r1).
CheckReport volume_ratio_check(const ModelSpace& space, double r1, double r2);

/// Delta_f r <= (m-1) sqrt(kappa) coth(sqrt(kappa) r) at interior nodes.
/// Ball models only (the coordinate must be the distance to the pole).
CheckReport laplacian_comparison_check(const ModelSpace& space, const RadialGrid& grid);

/// Minimum of Ric_f^m + (m-1) kappa over a sampling of [lo, hi]; the
/// curvature hypothesis holds iff this is >= -tol.
double curvature_hypothesis_slack(const ModelSpace& space, double lo, double hi);

}  // namespace wplab
