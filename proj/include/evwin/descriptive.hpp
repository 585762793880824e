#ifndef EVWIN_DESCRIPTIVE_HPP_
#define EVWIN_DESCRIPTIVE_HPP_

#include <optional>
#include <span>
#include <vector>

namespace evwin {

// Quantiles throughout the library use linear interpolation between order
// statistics at position (n-1)*p (Hyndman-Fan type 7).
double quantile_sorted(std::span<const double> sorted, double p);
double quantile(std::span<const double> sample, double p);
double median(std::span<const double> sample);
/// Raw median absolute deviation from the median (no consistency factor).
double mad(std::span<const double> sample);
double mean(std::span<const double> sample);
/// Sample variance with the n-1 denominator, two-pass.
double sample_variance(std::span<const double> sample);

struct Moments {
  double skewness;         // biased (1/n) moments
  double excess_kurtosis;  // biased (1/n) moments, minus 3
};

/// Returns nullopt for a zero-variance sample, where both ratios are undefined.
std::optional<Moments> shape_moments(std::span<const double> sample);

struct DescriptiveSummary {
  std::size_t count = 0;
  double mean = 0.0;
  double median = 0.0;
  double std_dev = 0.0;
  double mad = 0.0;
  double iqr = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double min = 0.0;
  double max = 0.0;
  double trimmed_mean_10 = 0.0;
  double trimmed_mean_20 = 0.0;
  std::optional<double> skewness;         // undefined for constant samples
  std::optional<double> excess_kurtosis;  // undefined for constant samples
};

DescriptiveSummary summarize(std::span<const double> sample);

/// Mean of the order statistics x_(k+1)..x_(n-k), k = floor(alpha*n).
double trimmed_mean(std::span<const double> sample, double alpha);

struct LMomentSummary {
  double l1 = 0.0;
  double l2 = 0.0;
  double l3 = 0.0;
  double l4 = 0.0;
  double tau3 = 0.0;
  double tau4 = 0.0;
};

/// Unbiased probability-weighted moments b_0..b_{order-1} of the sorted sample.
std::vector<double> probability_weighted_moments(std::span<const double> sample, int order);
LMomentSummary l_moments(std::span<const double> sample);

struct DensityEstimate {
  std::vector<double> grid;
  std::vector<double> density;
  double bandwidth = 0.0;
};

/// Silverman rule-of-thumb bandwidth: 0.9 * min(sd, IQR/1.34) * n^(-1/5).
double silverman_bandwidth(std::span<const double> sample);

/// Gaussian KDE evaluated on a uniform grid spanning [min - 3h, max + 3h].
DensityEstimate kde(std::span<const double> sample, int grid_points = 512);

/// Trapezoidal integral of y over x.
double trapezoid(std::span<const double> x, std::span<const double> y);

}  // namespace evwin

#endif  // EVWIN_DESCRIPTIVE_HPP_
