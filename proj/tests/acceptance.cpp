// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.  Tolerances are fixed here and nowhere else.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <exception>
#include <map>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "wplab/bounds.hpp"
#include "wplab/geometry.hpp"
#include "wplab/plaplacian.hpp"
#include "wplab/verify.hpp"

namespace {

using namespace wplab;

constexpr double pi = std::numbers::pi;

// Pinned tolerances.
constexpr std::size_t kNodes = 4001;
constexpr double kClosedFormRel = 0.005;
constexpr double kBottomSpectrumRel = 0.05;
constexpr double kHSquaredFactor = 100.0;
constexpr double kOrderLo = 3.5;
constexpr double kOrderHi = 4.5;
constexpr double kRootTol = 1e-10;
constexpr double kSharpSlack = 1.02;
constexpr double kHarmonicTol = 1e-6;
constexpr double kPiconeMin = 1e-8;
constexpr double kPiconeGap = 1e-4;
constexpr double kEqualityTol = 1e-8;
constexpr double kStabilityFactor = 2.0;
constexpr double kMoserSettle = 0.05;
constexpr double kMoserSettleExponent = 200.0;
constexpr double kHolderRoundoff = 1e-12;

struct Outcome
{
  bool passed = true;
  std::vector<std::string> info;

  void require(bool ok, const std::string& what)
  {
    if (!ok)
      passed = false;
    info.push_back(std::string(ok ? "ok   " : "FAIL ") + what);
  }
  void note(const std::string& what) { info.push_back("info " + what); }
};

std::string fmt(const char* f, auto... args)
{
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// p = 3 Dirichlet eigenfields of the m = n = 3 line model, shared by several
// criteria.
const std::map<double, EigenResult>& p3_fields()
{
  static const std::map<double, EigenResult> fields = [] {
    std::map<double, EigenResult> out;
    for (auto& e : eigen_sweep(line_model(3, 3.0), PExponent(3.0), {2.0, 4.0, 8.0, 16.0, 32.0}, kNodes))
      out.emplace(e.radius, std::move(e.result));
    return out;
  }();
  return fields;
}

Outcome closed_form_p2()
{
  Outcome o;
  for (double R : {2.0, 4.0, 8.0}) {
    const auto r = solve_first_eigen(line_model(3, 3.0), RadialGrid(-R, R, kNodes), PExponent(2.0));
    const double exact = 1.0 + std::pow(pi / (2.0 * R), 2.0);
    const double rel = std::abs(r.lambda / exact - 1.0);
    o.require(r.converged && rel <= kClosedFormRel,
              fmt("R=%g lambda=%.10f exact=%.10f rel=%.2e", R, r.lambda, exact, rel));
  }
  return o;
}

Outcome bottom_spectrum_limit()
{
  Outcome o;
  const auto& f = p3_fields();
  const double limit = 8.0 / 27.0;
  double prev = INFINITY;
  for (double R : {2.0, 4.0, 8.0, 16.0}) {
    const auto& r = f.at(R);
    o.require(r.converged && r.lambda <= prev * (1.0 + 2e-9),
              fmt("R=%g lambda=%.8f (nonincreasing, converged)", R, r.lambda));
    prev = r.lambda;
  }
  const double l16 = f.at(16.0).lambda;
  o.require(l16 >= limit && l16 <= limit * (1.0 + kBottomSpectrumRel),
            fmt("lambda(16)/(8/27) - 1 = %.4f", l16 / limit - 1.0));
  return o;
}

double example_error(double p, double m, double a, std::size_t n)
{
  const RadialGrid g(-4.0, 4.0, n);
  const auto v = RadialField::sample(g, [a](double t) { return std::exp(-a * t); });
  const auto lap = apply_p_laplacian(line_model(3, m), v, PExponent(p), 0.0);
  const double lambda = model_lambda(p, m, a);
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double target = -lambda * std::pow(v[i], p - 1.0);
    worst = std::max(worst, std::abs(lap[i] / target - 1.0));
  }
  return worst;
}

Outcome example_reproduction()
{
  Outcome o;
  const double m = 5.0;
  for (double p : {2.0, 3.0, 4.0}) {
    const double a = (m - 1.0) / p;
    const std::size_t n = 4001;
    const double h = 8.0 / (n - 1);
    const double e1 = example_error(p, m, a, n);
    const double e2 = example_error(p, m, a, 2 * n - 1);
    o.require(e1 <= kHSquaredFactor * h * h, fmt("p=%g max rel error %.3e <= %.3e", p, e1, kHSquaredFactor * h * h));
    if (p != 2.0)
      o.require(e1 / e2 >= kOrderLo && e1 / e2 <= kOrderHi, fmt("p=%g error ratio on halving h %.3f", p, e1 / e2));
    else
      o.note(fmt("p=2 errors %.2e / %.2e are at roundoff", e1, e2));
  }
  return o;
}

Outcome sharp_root_identities()
{
  Outcome o;
  o.require(sharp_root(2.0, 3.0, 0.0) == 2.0, "sharp_root(2,3,0) = 2");
  o.require(std::abs(sharp_root(2.0, 3.0, 1.0) - 1.0) <= kRootTol, "sharp_root(2,3,1) = 1");
  double worst_trip = 0.0;
  double worst_x = 0.0;
  int count = 0;
  for (double p : {1.5, 2.0, 3.0, 4.5})
    for (double m : {3.0, 5.0, 8.5})
      for (double s : {0.0, 0.25, 0.6, 1.0}) {
        if (count == 20)
          break;
        const double a = (m - 1.0) / p + s * ((m - 1.0) / (p - 1.0) - (m - 1.0) / p);
        const double lambda = model_lambda(p, m, a);
        worst_trip = std::max(worst_trip, std::abs(sharp_root(p, m, lambda) - a) / a);
        worst_x = std::max(worst_x, std::abs(std::sqrt(x_root(p, m, lambda)) / ((p - 1.0) * sharp_root(p, m, lambda)) - 1.0));
        ++count;
      }
  o.require(count == 20 && worst_trip <= kRootTol, fmt("round trip over %d points, worst rel %.2e", count, worst_trip));
  o.require(worst_x <= kRootTol, fmt("sqrt(x_root) = (p-1) sharp_root, worst rel %.2e", worst_x));
  return o;
}

Outcome sharp_gradient()
{
  Outcome o;
  const auto space = line_model(3, 3.0);
  const PExponent p(3.0);
  const auto rep = check_global_sharp(space, p3_fields().at(16.0), p, 3.0);
  const double measured = rep.measured;
  const double limit = rep.bound * kSharpSlack;
  o.require(measured <= limit,
            fmt("R=16 sup inner |v'|/v = %.4f vs sharp_root * 1.02 = %.4f (lambda_num %.6f, clamped to %.6f)",
                measured, limit, p3_fields().at(16.0).lambda, rep.details.at("lambda_used")));
  for (double R : {8.0, 16.0, 32.0}) {
    const auto r = check_global_sharp(space, p3_fields().at(R), p, 3.0);
    o.note(fmt("R=%g measured/bound = %.3f", R, r.measured / r.bound));
  }

  const RadialGrid g(-8.0, 8.0, kNodes);
  const auto v = harmonic_radial(space, p, -1.0, 0.0, g);
  const auto ratio = gradient_ratio(inner_part(v, 0.8));
  const double target = 2.0 / 2.0;
  const double dev = std::max(std::abs(ratio.max() - target), std::abs(ratio.min() - target));
  o.require(dev <= kHarmonicTol, fmt("p-harmonic field ratio vs (m-1)/(p-1) = 1, max dev %.2e", dev));
  return o;
}

Outcome picone_identity()
{
  Outcome o;
  std::mt19937 rng(20240613);
  std::uniform_real_distribution<double> c(-0.45, 0.45), w(0.5, 3.0), pu(1.3, 4.0);
  double worst_min = INFINITY;
  double worst_gap = 0.0;
  double worst_order = INFINITY;
  double best_order = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const double a1 = c(rng), a2 = c(rng), b1 = c(rng), b2 = c(rng), w1 = w(rng), w2 = w(rng);
    const double p = pu(rng);
    auto run = [&](std::size_t n) {
      const RadialGrid g(0.0, 2.0, n);
      const auto u = RadialField::sample(g, [&](double t) { return 1.0 + a1 * std::sin(w1 * t) + a2 * std::cos(w2 * t); });
      const auto v = RadialField::sample(g, [&](double t) { return 1.5 + b1 * std::cos(w2 * t) + b2 * std::sin(w1 * t); });
      return picone(u, v, PExponent(p));
    };
    const auto coarse = run(2001);
    const auto fine = run(4001);
    worst_min = std::min(worst_min, coarse.min_L / coarse.scale);
    worst_gap = std::max(worst_gap, coarse.max_gap / coarse.scale);
    const double order = coarse.max_gap / fine.max_gap;
    worst_order = std::min(worst_order, order);
    best_order = std::max(best_order, order);
  }
  o.require(worst_min >= -kPiconeMin, fmt("min L / scale = %.2e", worst_min));
  o.require(worst_gap <= kPiconeGap, fmt("max gap / scale = %.2e", worst_gap));
  o.require(worst_order >= kOrderLo && best_order <= kOrderHi,
            fmt("gap ratio on halving h in [%.3f, %.3f]", worst_order, best_order));
  return o;
}

Outcome comparison_theorems()
{
  Outcome o;
  const auto lap = laplacian_comparison_check(space_form_ball(3, 1.0), RadialGrid(0.0, 8.0, kNodes));
  const double gap = lap.details.at("max_abs_gap");
  o.require(lap.passed && gap <= kEqualityTol, fmt("sinh ball Laplacian gap %.2e", gap));

  const auto space = line_model(3, 5.0);
  int pairs = 0;
  int bad = 0;
  double worst = 0.0;
  for (int i = 1; i <= 16; ++i)
    for (int j = i + 1; j <= 16; ++j) {
      const auto r = volume_ratio_check(space, 0.5 * i, 0.5 * j);
      ++pairs;
      if (!r.passed || !r.hypothesis_ok)
        ++bad;
      worst = std::max(worst, r.measured / r.bound);
    }
  o.require(bad == 0, fmt("volume ratio on %d grid pairs in [0.5, 8]: %d violations, worst ratio %.12f", pairs, bad, worst));
  return o;
}

Outcome subsolution_equality()
{
  Outcome o;
  const RadialGrid g(-8.0, 8.0, kNodes);
  const double p = 3.0, m = 5.0;
  const double c = (m - 1.0) / p;
  const auto r1 = check_subsolution(line_model(3, m), PExponent(p), c, std::pow(c, p), g);
  o.require(r1.details.at("max_abs_residual") <= r1.details.at("tolerance"),
            fmt("c=(m-1)/p residual %.2e <= %.2e", r1.details.at("max_abs_residual"), r1.details.at("tolerance")));
  const double a = 1.5;
  const auto r2 = check_subsolution(line_model_with_weight(3, m, 2.0 - a), PExponent(p), a / p,
                                    std::pow(a / p, p), g);
  o.require(r2.details.at("max_abs_residual") <= r2.details.at("tolerance"),
            fmt("c=a/p residual %.2e <= %.2e", r2.details.at("max_abs_residual"), r2.details.at("tolerance")));
  return o;
}

Outcome local_and_liouville()
{
  Outcome o;
  auto stable = [&](const char* label, const std::map<double, EigenResult>& fields, const ModelSpace& space) {
    double lo = INFINITY, hi = 0.0;
    std::string values;
    for (double R : {4.0, 8.0, 16.0}) {
      const double C = check_local_gradient_estimate(space, fields.at(R), R, 1.0).details.at("C_required");
      lo = std::min(lo, C);
      hi = std::max(hi, C);
      values += fmt(" %.4f", C);
    }
    o.require(hi <= kStabilityFactor * lo, fmt("%s C_required over R=4,8,16:%s", label, values.c_str()));
  };
  std::map<double, EigenResult> p2;
  for (auto& e : eigen_sweep(line_model(3, 3.0), PExponent(2.0), {4.0, 8.0, 16.0}, kNodes))
    p2.emplace(e.radius, std::move(e.result));
  stable("p=2", p2, line_model(3, 3.0));
  stable("p=3", p3_fields(), line_model(3, 3.0));

  const std::vector<double> radii{4.0, 8.0, 16.0, 32.0};
  const auto rep = check_liouville_rate(flat_density(), PExponent(3.0), radii);
  o.require(rep.hypothesis_ok && rep.passed,
            fmt("flat density max R*ratio %.4f <= 2 median %.4f", rep.measured, rep.bound));
  return o;
}

Outcome moser()
{
  Outcome o;
  const auto space = line_model(3, 3.0);
  const PExponent p(3.0);
  double dmin = INFINITY, dmax = 0.0;
  for (double R : {2.0, 4.0, 8.0}) {
    const auto u = moser_potential(inner_part(p3_fields().at(2.0 * R).eigenfield, 0.9), p);
    const auto t = moser_trace(space, u, p, R, 1.0, 1.0, 8);
    double holder = 0.0;
    double literal = 0.0;
    double settle = 0.0;
    for (std::size_t k = 0; k < t.norms.size(); ++k) {
      holder = std::max(holder, t.norms[k] / (t.ball_sups[k] * std::pow(t.volumes[k], 1.0 / t.b_sequence[k])));
      literal = std::max(literal, t.norms[k] / (t.sup_inner * std::pow(t.volumes[k], 1.0 / t.b_sequence[k])));
      if (t.b_sequence[k] > kMoserSettleExponent)
        settle = std::max(settle, std::abs(t.norms[k] / t.sup_inner - 1.0));
    }
    o.require(holder <= 1.0 + kHolderRoundoff, fmt("R=%g Hoelder norm / (sup_Bk h V^(1/b)) max %.12f", R, holder));
    o.require(settle <= kMoserSettle, fmt("R=%g |norm/sup_inner - 1| once b_k > 200: %.4f", R, settle));
    o.note(fmt("R=%g with sup over B_(R/2) in place of B_k the ratio reaches %.3f", R, literal));
    dmin = std::min(dmin, t.d_fit);
    dmax = std::max(dmax, t.d_fit);
    o.note(fmt("R=%g d_fit %.4f", R, t.d_fit));
  }
  o.require(dmax <= kStabilityFactor * dmin, fmt("d_fit spread %.3f", dmax / dmin));
  return o;
}

}  // namespace

int main()
{
  struct Criterion
  {
    const char* name;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {"closed-form eigenvalue p=2", closed_form_p2},
      {"bottom spectrum limit p=3", bottom_spectrum_limit},
      {"exponential eigenfunction family", example_reproduction},
      {"sharp root identities", sharp_root_identities},
      {"sharp gradient bound", sharp_gradient},
      {"Picone identity", picone_identity},
      {"comparison theorems", comparison_theorems},
      {"subsolution equality case", subsolution_equality},
      {"local estimate and Liouville rate", local_and_liouville},
      {"Moser trace", moser},
  };
  int failures = 0;
  int index = 1;
  for (const auto& c : criteria) {
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    std::printf("%s %2d %s\n", o.passed ? "PASS" : "FAIL", index++, c.name);
    for (const auto& line : o.info)
      std::printf("       %s\n", line.c_str());
    std::fflush(stdout);
    if (!o.passed)
      ++failures;
  }
  std::printf("%d of 10 criteria passed\n", 10 - failures);
  return failures == 0 ? 0 : 1;
}
