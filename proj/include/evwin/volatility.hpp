#ifndef EVWIN_VOLATILITY_HPP_
#define EVWIN_VOLATILITY_HPP_

#include <span>
#include <vector>

#include "evwin/resample.hpp"
#include "evwin/series.hpp"

namespace evwin {

/// Trailing-window sample variance (w - 1 denominator) of log returns. Windows
/// count return observations, not calendar days; the first value is reported
/// on the date of the w-th return. No annualisation.
struct RollingVolatility {
  int window = 0;
  std::vector<Date> dates;
  std::vector<double> variance;
};

RollingVolatility rolling_variance(const ReturnSeries& returns, int window);

struct VarianceComparison {
  double var_pre = 0.0;
  double var_post = 0.0;
  double ratio = 0.0;  // var_post / var_pre
  double ci_low = 0.0;
  double ci_high = 0.0;
  double alpha = 0.05;
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
  std::size_t degenerate_count = 0;
};

/// Ratio of unbiased return variances with a percentile bootstrap interval from
/// independent per-side resampling.
VarianceComparison variance_ratio(std::span<const double> pre_returns, std::span<const double> post_returns,
                                  const BootstrapPlan& plan, double alpha = 0.05);

}  // namespace evwin

#endif  // EVWIN_VOLATILITY_HPP_
