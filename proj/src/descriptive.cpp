#include "evwin/descriptive.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <numeric>

#include "evwin/error.hpp"

namespace evwin {
namespace {

std::vector<double> sorted_copy(std::span<const double> sample) {
  std::vector<double> s(sample.begin(), sample.end());
  std::sort(s.begin(), s.end());
  return s;
}

void require_non_empty(std::span<const double> sample, const char* what) {
  if (sample.empty()) throw Error(ErrorKind::InsufficientData, std::string(what) + " of an empty sample");
}

}  // namespace

double quantile_sorted(std::span<const double> sorted, double p) {
  require_non_empty(sorted, "quantile");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorKind::InvalidArgument, "quantile probability outside [0, 1]");
  const double pos = static_cast<double>(sorted.size() - 1) * p;
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double quantile(std::span<const double> sample, double p) {
  const auto s = sorted_copy(sample);
  return quantile_sorted(s, p);
}

double median(std::span<const double> sample) { return quantile(sample, 0.5); }

double mad(std::span<const double> sample) {
  const double med = median(sample);
  std::vector<double> dev(sample.size());
  std::transform(sample.begin(), sample.end(), dev.begin(), [med](double x) { return std::abs(x - med); });
  return median(dev);
}

double mean(std::span<const double> sample) {
  require_non_empty(sample, "mean");
  return std::accumulate(sample.begin(), sample.end(), 0.0) / static_cast<double>(sample.size());
}

double sample_variance(std::span<const double> sample) {
  if (sample.size() < 2) throw Error(ErrorKind::InsufficientData, "variance needs at least 2 values");
  // Exact zero for constant input; the mean of equal values can be off by an ulp.
  if (std::adjacent_find(sample.begin(), sample.end(), std::not_equal_to<>()) == sample.end()) return 0.0;
  const double m = mean(sample);
  double ss = 0.0;
  for (double x : sample) ss += (x - m) * (x - m);
  return ss / static_cast<double>(sample.size() - 1);
}

std::optional<Moments> shape_moments(std::span<const double> sample) {
  require_non_empty(sample, "moments");
  const double n = static_cast<double>(sample.size());
  const double m = mean(sample);
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double x : sample) {
    const double d = x - m;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  m2 /= n;
  m3 /= n;
  m4 /= n;
  // Relative threshold: a constant sample can leave rounding residue in m2.
  if (!(m2 > 0.0) || std::sqrt(m2) <= 1e-14 * std::max(1.0, std::abs(m))) return std::nullopt;
  return Moments{m3 / std::pow(m2, 1.5), m4 / (m2 * m2) - 3.0};
}

DescriptiveSummary summarize(std::span<const double> sample) {
  if (sample.size() < 4) throw Error(ErrorKind::InsufficientData, "summary needs at least 4 values");
  const auto s = sorted_copy(sample);
  DescriptiveSummary out;
  out.count = s.size();
  out.mean = mean(s);
  out.median = quantile_sorted(s, 0.5);
  out.std_dev = std::sqrt(sample_variance(s));
  out.mad = mad(s);
  out.q1 = quantile_sorted(s, 0.25);
  out.q3 = quantile_sorted(s, 0.75);
  out.iqr = out.q3 - out.q1;
  out.min = s.front();
  out.max = s.back();
  out.trimmed_mean_10 = trimmed_mean(s, 0.1);
  out.trimmed_mean_20 = trimmed_mean(s, 0.2);
  if (auto mom = shape_moments(s)) {
    out.skewness = mom->skewness;
    out.excess_kurtosis = mom->excess_kurtosis;
  }
  return out;
}

double trimmed_mean(std::span<const double> sample, double alpha) {
  if (!(alpha >= 0.0 && alpha < 0.5)) throw Error(ErrorKind::InvalidArgument, "trim fraction must be in [0, 0.5)");
  const std::size_t n = sample.size();
  const auto k = static_cast<std::size_t>(std::floor(alpha * static_cast<double>(n)));
  if (n == 0 || n <= 2 * k) throw Error(ErrorKind::InsufficientData, "nothing left after trimming");
  const auto s = sorted_copy(sample);
  double sum = 0.0;
  for (std::size_t i = k; i < n - k; ++i) sum += s[i];
  return sum / static_cast<double>(n - 2 * k);
}

std::vector<double> probability_weighted_moments(std::span<const double> sample, int order) {
  const std::size_t n = sample.size();
  if (order < 1 || n < static_cast<std::size_t>(order)) {
    throw Error(ErrorKind::InsufficientData, "probability weighted moments need n >= order");
  }
  const auto s = sorted_copy(sample);
  std::vector<double> b(static_cast<std::size_t>(order), 0.0);
  for (int j = 0; j < order; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      // C(i, j) / C(n-1, j) for the (i+1)-th order statistic, as a running product.
      double w = 1.0;
      for (int k = 0; k < j; ++k) {
        w *= (static_cast<double>(i) - k) / (static_cast<double>(n - 1) - k);
      }
      acc += w * s[i];
    }
    b[static_cast<std::size_t>(j)] = acc / static_cast<double>(n);
  }
  return b;
}

LMomentSummary l_moments(std::span<const double> sample) {
  if (sample.size() < 4) throw Error(ErrorKind::InsufficientData, "L-moments need at least 4 values");
  const auto b = probability_weighted_moments(sample, 4);
  LMomentSummary out;
  out.l1 = b[0];
  out.l2 = 2.0 * b[1] - b[0];
  out.l3 = 6.0 * b[2] - 6.0 * b[1] + b[0];
  out.l4 = 20.0 * b[3] - 30.0 * b[2] + 12.0 * b[1] - b[0];
  if (!(out.l2 > 0.0)) throw Error(ErrorKind::ZeroL2, "L-scale is zero; L-moment ratios undefined");
  out.tau3 = out.l3 / out.l2;
  out.tau4 = out.l4 / out.l2;
  return out;
}

double silverman_bandwidth(std::span<const double> sample) {
  if (sample.size() < 2) throw Error(ErrorKind::InsufficientData, "bandwidth needs at least 2 values");
  const double sd = std::sqrt(sample_variance(sample));
  const double iqr = quantile(sample, 0.75) - quantile(sample, 0.25);
  double spread = std::min(sd, iqr / 1.34);
  if (!(spread > 0.0)) spread = sd;  // zero IQR falls back to the SD
  const double h = 0.9 * spread * std::pow(static_cast<double>(sample.size()), -0.2);
  if (!(h > 0.0)) throw Error(ErrorKind::ZeroBandwidth, "sample is constant");
  return h;
}

DensityEstimate kde(std::span<const double> sample, int grid_points) {
  if (grid_points < 2) throw Error(ErrorKind::InvalidArgument, "grid needs at least 2 points");
  DensityEstimate out;
  out.bandwidth = silverman_bandwidth(sample);
  const double h = out.bandwidth;
  const auto [lo_it, hi_it] = std::minmax_element(sample.begin(), sample.end());
  const double lo = *lo_it - 3.0 * h;
  const double hi = *hi_it + 3.0 * h;
  const double step = (hi - lo) / (grid_points - 1);
  const double norm = 1.0 / (static_cast<double>(sample.size()) * h * std::sqrt(2.0 * std::numbers::pi));

  out.grid.resize(static_cast<std::size_t>(grid_points));
  out.density.resize(out.grid.size());
  for (std::size_t g = 0; g < out.grid.size(); ++g) {
    const double x = lo + step * static_cast<double>(g);
    double acc = 0.0;
    for (double xi : sample) {
      const double u = (x - xi) / h;
      acc += std::exp(-0.5 * u * u);
    }
    out.grid[g] = x;
    out.density[g] = acc * norm;
  }
  return out;
}

double trapezoid(std::span<const double> x, std::span<const double> y) {
  double area = 0.0;
  for (std::size_t i = 1; i < x.size() && i < y.size(); ++i) area += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return area;
}

}  // namespace evwin
