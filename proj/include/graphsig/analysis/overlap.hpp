#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace graphsig::analysis {

struct GaussianComponent {
  double weight = 1.0;
  double mean = 0.0;
  double sigma = 1.0;
};

/// One-dimensional Gaussian or Gaussian mixture.
struct Density1d {
  std::vector<GaussianComponent> components;

  static Density1d gaussian(double mean, double sigma);
  static Density1d mixture(std::vector<GaussianComponent> components);

  /// Throws on empty components, non-positive sigma or weights that do
  /// not sum to one.
  void validate() const;
  [[nodiscard]] double operator()(double x) const;
};

enum class OverlapAggregation { none, pairwise_mean };

struct OverlapGrid {
  double lo = -10.0;
  double hi = 10.0;
  std::size_t points = std::size_t{1} << 14;
};

/// [min mean - 10 sigma_max, max mean + 10 sigma_max] over both densities.
OverlapGrid default_overlap_grid(const Density1d& a, const Density1d& b);

struct OverlapResult {
  double error = 0.0;  // integral of min(pi_1 f_1, pi_2 f_2)
  std::vector<double> x;
  std::vector<double> f1;
  std::vector<double> f2;
};

/// Tolerated deviation of the gridded mass from one.
inline constexpr double kMassTolerance = 1e-6;

/// Bayes error of two classes on a uniform grid. With pairwise_mean each
/// density is replaced by that of (x_i + x_j) / 2 for two independent draws,
/// obtained by discrete self-convolution. Throws when a gridded density
/// misses unit mass by more than kMassTolerance.
OverlapResult density_overlap_1d(const Density1d& class1, const Density1d& class2,
                                 OverlapAggregation aggregation, double prior1 = 0.5,
                                 std::optional<OverlapGrid> grid = std::nullopt);

/// Trapezoid integral of samples on a uniform grid.
double trapezoid(const std::vector<double>& f, double step);

struct OverlapPanel {
  std::string name;  // unimodal_before, unimodal_after, mixture_before, mixture_after
  OverlapResult result;
};

struct OverlapDemoParams {
  double mu1 = -2.0;
  double mu2 = 2.0;
  double sigma = 1.0;
  double prior1 = 0.5;
};

/// Two-class unimodal pair G(mu1), G(mu2), and the mixture pair
/// 0.5 G(mu1) + 0.5 G(mu2) against G((mu1 + mu2) / 2), each before and
/// after pairwise-mean aggregation.
std::vector<OverlapPanel> overlap_demo(const OverlapDemoParams& params);

}  // namespace graphsig::analysis
