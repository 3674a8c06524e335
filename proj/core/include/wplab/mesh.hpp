#pragma once

// Uniform 1D grids and sampled profiles.  Everything radial in the library
// (eigenfunctions, densities, gradient ratios) lives on a RadialGrid.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace wplab {

class RadialGrid
{
public:
  RadialGrid(double lo, double hi, std::size_t npoints);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  std::size_t size() const noexcept { return npoints_; }
  double spacing() const noexcept { return h_; }
  double length() const noexcept { return hi_ - lo_; }

  /// Coordinate of node i; the last node is exactly hi().
  double node(std::size_t i) const noexcept
  {
    return i + 1 == npoints_ ? hi_ : lo_ + static_cast<double>(i) * h_;
  }

  std::vector<double> nodes() const;

  bool operator==(const RadialGrid&) const = default;

private:
  double lo_;
  double hi_;
  std::size_t npoints_;
  double h_;
};

class RadialField
{
public:
  /// Throws InvalidArgument on a length mismatch or a non-finite value.
  RadialField(RadialGrid grid, std::vector<double> values);

  template <typename F>
  static RadialField sample(const RadialGrid& grid, F&& f)
  {
    std::vector<double> values(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
      values[i] = f(grid.node(i));
    return RadialField(grid, std::move(values));
  }

  static RadialField constant(const RadialGrid& grid, double c);

  const RadialGrid& grid() const noexcept { return grid_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

  double min() const;
  double max() const;
  double max_abs() const;

private:
  RadialGrid grid_;
  std::vector<double> values_;
};

/// Second-order central differences inside, one-sided 3-point stencils at
/// both ends.
RadialField derivative(const RadialField& field);

/// Trapezoid rule for the integral of field * density.
double integrate_weighted(const RadialField& field, const RadialField& density);

/// (integral |field|^q density)^(1/q), q >= 1.  Evaluated relative to
/// max|field| so large exponents cannot overflow.
double lp_norm(const RadialField& field, const RadialField& density, double q);

/// Restriction to the nodes of the smallest node-aligned interval that
/// encloses [a, b].
RadialField restrict(const RadialField& field, double a, double b);

/// Throws InvalidArgument unless both fields live on the identical grid.
void require_same_grid(const RadialField& a, const RadialField& b);

}  // namespace wplab
