#include "wplab/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wplab/errors.hpp"

namespace wplab {

RadialGrid::RadialGrid(double lo, double hi, std::size_t npoints)
    : lo_(lo), hi_(hi), npoints_(npoints), h_(0.0)
{
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi))
    throw InvalidArgument("RadialGrid: need finite lo < hi");
  if (npoints < 3)
    throw InvalidArgument("RadialGrid: need at least 3 nodes");
  h_ = (hi - lo) / static_cast<double>(npoints - 1);
  if (!(h_ > 0.0))
    throw InvalidArgument("RadialGrid: spacing underflows to zero");
}

std::vector<double> RadialGrid::nodes() const
{
  std::vector<double> out(npoints_);
  for (std::size_t i = 0; i < npoints_; ++i)
    out[i] = node(i);
  return out;
}

RadialField::RadialField(RadialGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values))
{
  if (values_.size() != grid_.size())
    throw InvalidArgument("RadialField: " + std::to_string(values_.size()) +
                          " values for a grid of " +
                          std::to_string(grid_.size()) + " nodes");
  for (std::size_t i = 0; i < values_.size(); ++i)
    if (!std::isfinite(values_[i]))
      throw InvalidArgument("RadialField: non-finite value at node " +
                            std::to_string(i));
}

RadialField RadialField::constant(const RadialGrid& grid, double c)
{
  return RadialField(grid, std::vector<double>(grid.size(), c));
}

double RadialField::min() const
{
  return *std::min_element(values_.begin(), values_.end());
}

double RadialField::max() const
{
  return *std::max_element(values_.begin(), values_.end());
}

double RadialField::max_abs() const
{
  double m = 0.0;
  for (double x : values_)
    m = std::max(m, std::abs(x));
  return m;
}

void require_same_grid(const RadialField& a, const RadialField& b)
{
  if (!(a.grid() == b.grid()))
    throw InvalidArgument("fields are defined on different grids");
}

RadialField derivative(const RadialField& field)
{
  const auto& g = field.grid();
  const std::size_t n = g.size();
  const double h = g.spacing();
  const auto v = field.values();
  std::vector<double> d(n);

  for (std::size_t i = 1; i + 1 < n; ++i)
    d[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
  d[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
  d[n - 1] = (3.0 * v[n - 1] - 4.0 * v[n - 2] + v[n - 3]) / (2.0 * h);
  return RadialField(g, std::move(d));
}

double integrate_weighted(const RadialField& field, const RadialField& density)
{
  require_same_grid(field, density);
  const auto f = field.values();
  const auto w = density.values();
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] < 0.0)
      throw InvalidArgument("integrate_weighted: negative density at node " +
                            std::to_string(i));

  const std::size_t n = f.size();
  double sum = 0.5 * (f[0] * w[0] + f[n - 1] * w[n - 1]);
  for (std::size_t i = 1; i + 1 < n; ++i)
    sum += f[i] * w[i];
  return sum * field.grid().spacing();
}

double lp_norm(const RadialField& field, const RadialField& density, double q)
{
  if (!(q >= 1.0) || !std::isfinite(q))
    throw InvalidArgument("lp_norm: exponent must satisfy q >= 1");
  require_same_grid(field, density);

  const double top = field.max_abs();
  if (top == 0.0)
    return 0.0;

  std::vector<double> scaled(field.size());
  const auto f = field.values();
  for (std::size_t i = 0; i < scaled.size(); ++i)
    scaled[i] = std::pow(std::abs(f[i]) / top, q);

  const double mass = integrate_weighted(RadialField(field.grid(), std::move(scaled)), density);
  // exp(log(mass)/q) keeps huge densities and exponents in range.
  return top * std::exp(std::log(mass) / q);
}

RadialField restrict(const RadialField& field, double a, double b)
{
  const auto& g = field.grid();
  if (!(a < b) || a < g.lo() || b > g.hi())
    throw InvalidArgument("restrict: need lo <= a < b <= hi");

  const double h = g.spacing();
  const double slack = 1e-9;
  const auto first = static_cast<std::size_t>(std::floor((a - g.lo()) / h + slack));
  auto last = static_cast<std::size_t>(std::ceil((b - g.lo()) / h - slack));
  last = std::min(last, g.size() - 1);

  if (last < first + 2)
    throw InvalidArgument("restrict: fewer than 3 nodes in [" + std::to_string(a) +
                          ", " + std::to_string(b) + "]");

  const auto v = field.values();
  std::vector<double> sub(v.begin() + static_cast<std::ptrdiff_t>(first),
                          v.begin() + static_cast<std::ptrdiff_t>(last) + 1);
  RadialGrid grid(g.node(first), g.node(last), last - first + 1);
  return RadialField(grid, std::move(sub));
}

}  // namespace wplab
