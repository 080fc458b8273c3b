#include "graphsig/analysis/overlap.hpp"

#include "graphsig/common.hpp"
#include "graphsig/format.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace graphsig::analysis {

Density1d Density1d::gaussian(double mean, double sigma) {
  Density1d d{{{1.0, mean, sigma}}};
  d.validate();
  return d;
}

Density1d Density1d::mixture(std::vector<GaussianComponent> components) {
  Density1d d{std::move(components)};
  d.validate();
  return d;
}

void Density1d::validate() const {
  if (components.empty()) throw Error("density: no components");
  double total = 0.0;
  for (const auto& c : components) {
    if (!(c.sigma > 0.0) || !std::isfinite(c.sigma)) {
      throw Error("density: component sigma must be positive and finite, got " + format_double(c.sigma));
    }
    if (!std::isfinite(c.mean)) throw Error("density: component mean must be finite");
    if (!(c.weight >= 0.0)) throw Error("density: component weights must be non-negative");
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error("density: component weights must sum to 1");
}

double Density1d::operator()(double x) const {
  double f = 0.0;
  for (const auto& c : components) {
    const double u = (x - c.mean) / c.sigma;
    f += c.weight * std::exp(-0.5 * u * u) / (c.sigma * std::sqrt(2.0 * std::numbers::pi));
  }
  return f;
}

OverlapGrid default_overlap_grid(const Density1d& a, const Density1d& b) {
  double lo = INFINITY;
  double hi = -INFINITY;
  double sigma = 0.0;
  for (const auto* d : {&a, &b}) {
    for (const auto& c : d->components) {
      lo = std::min(lo, c.mean);
      hi = std::max(hi, c.mean);
      sigma = std::max(sigma, c.sigma);
    }
  }
  return {lo - 10.0 * sigma, hi + 10.0 * sigma, std::size_t{1} << 14};
}

double trapezoid(const std::vector<double>& f, double step) {
  if (f.size() < 2) return 0.0;
  double s = 0.5 * (f.front() + f.back());
  for (std::size_t i = 1; i + 1 < f.size(); ++i) s += f[i];
  return s * step;
}

namespace {

std::vector<double> pairwise_mean_density(const std::vector<double>& f, double step) {
  const auto n = static_cast<std::ptrdiff_t>(f.size());
  std::vector<double> g(f.size(), 0.0);
  for (std::ptrdiff_t k = 0; k < n; ++k) {
    const std::ptrdiff_t target = 2 * k;
    const std::ptrdiff_t j_lo = std::max<std::ptrdiff_t>(0, target - (n - 1));
    const std::ptrdiff_t j_hi = std::min<std::ptrdiff_t>(n - 1, target);
    double s = 0.0;
    for (std::ptrdiff_t j = j_lo; j <= j_hi; ++j) s += f[static_cast<std::size_t>(j)] * f[static_cast<std::size_t>(target - j)];
    g[static_cast<std::size_t>(k)] = 2.0 * step * s;
  }
  return g;
}

void check_mass(const std::vector<double>& f, double step, const char* what) {
  const double mass = trapezoid(f, step);
  if (std::abs(mass - 1.0) > kMassTolerance) {
    throw Error(std::string("density overlap: grid too coarse or narrow, ") + what + " has mass " +
                format_double(mass));
  }
}

}  // namespace

OverlapResult density_overlap_1d(const Density1d& class1, const Density1d& class2,
                                 OverlapAggregation aggregation, double prior1,
                                 std::optional<OverlapGrid> grid) {
  class1.validate();
  class2.validate();
  if (!(prior1 > 0.0 && prior1 < 1.0)) throw Error("density overlap: prior must lie in (0, 1)");
  const OverlapGrid g = grid ? *grid : default_overlap_grid(class1, class2);
  if (g.points < 3 || !(g.hi > g.lo)) throw Error("density overlap: need hi > lo and at least 3 points");
  const double step = (g.hi - g.lo) / static_cast<double>(g.points - 1);

  OverlapResult r;
  r.x.resize(g.points);
  r.f1.resize(g.points);
  r.f2.resize(g.points);
  for (std::size_t i = 0; i < g.points; ++i) {
    r.x[i] = g.lo + static_cast<double>(i) * step;
    r.f1[i] = class1(r.x[i]);
    r.f2[i] = class2(r.x[i]);
  }
  check_mass(r.f1, step, "class 1 density");
  check_mass(r.f2, step, "class 2 density");
  if (aggregation == OverlapAggregation::pairwise_mean) {
    r.f1 = pairwise_mean_density(r.f1, step);
    r.f2 = pairwise_mean_density(r.f2, step);
    check_mass(r.f1, step, "aggregated class 1 density");
    check_mass(r.f2, step, "aggregated class 2 density");
  }

  std::vector<double> lower(g.points);
  for (std::size_t i = 0; i < g.points; ++i) lower[i] = std::min(prior1 * r.f1[i], (1.0 - prior1) * r.f2[i]);
  r.error = trapezoid(lower, step);
  return r;
}

std::vector<OverlapPanel> overlap_demo(const OverlapDemoParams& p) {
  const double mid = 0.5 * (p.mu1 + p.mu2);
  const auto u1 = Density1d::gaussian(p.mu1, p.sigma);
  const auto u2 = Density1d::gaussian(p.mu2, p.sigma);
  const auto m1 = Density1d::mixture({{0.5, p.mu1, p.sigma}, {0.5, p.mu2, p.sigma}});
  const auto m2 = Density1d::gaussian(mid, p.sigma);
  const auto ug = default_overlap_grid(u1, u2);
  const auto mg = default_overlap_grid(m1, m2);
  std::vector<OverlapPanel> out;
  out.push_back({"unimodal_before", density_overlap_1d(u1, u2, OverlapAggregation::none, p.prior1, ug)});
  out.push_back({"unimodal_after", density_overlap_1d(u1, u2, OverlapAggregation::pairwise_mean, p.prior1, ug)});
  out.push_back({"mixture_before", density_overlap_1d(m1, m2, OverlapAggregation::none, p.prior1, mg)});
  out.push_back({"mixture_after", density_overlap_1d(m1, m2, OverlapAggregation::pairwise_mean, p.prior1, mg)});
  return out;
}

}  // namespace graphsig::analysis
