#include "evwin/volatility.hpp"

#include "evwin/descriptive.hpp"
#include "evwin/error.hpp"

namespace evwin {

RollingVolatility rolling_variance(const ReturnSeries& returns, int window) {
  if (window < 2) throw Error(ErrorKind::InvalidArgument, "window must be at least 2");
  const auto w = static_cast<std::size_t>(window);
  if (returns.size() < w) {
    throw Error(ErrorKind::InsufficientData,
                "window " + std::to_string(window) + " exceeds " + std::to_string(returns.size()) + " returns");
  }
  RollingVolatility out;
  out.window = window;
  const std::span<const double> r = returns.log_returns;
  for (std::size_t end = w; end <= r.size(); ++end) {
    out.dates.push_back(returns.dates[end - 1]);
    out.variance.push_back(sample_variance(r.subspan(end - w, w)));
  }
  return out;
}

VarianceComparison variance_ratio(std::span<const double> pre_returns, std::span<const double> post_returns,
                                  const BootstrapPlan& plan, double alpha) {
  if (pre_returns.size() < 3 || post_returns.size() < 3) {
    throw Error(ErrorKind::InsufficientData, "variance ratio needs at least 3 returns per side");
  }
  VarianceComparison out;
  out.var_pre = sample_variance(pre_returns);
  out.var_post = sample_variance(post_returns);
  if (!(out.var_pre > 0.0)) throw Error(ErrorKind::ZeroPreVariance, "pre-event return variance is zero");
  out.ratio = out.var_post / out.var_pre;

  BootstrapPlan two_sample = plan;
  two_sample.scheme = ResampleScheme::TwoSampleIndependent;
  const auto summary = bootstrap_test(
      pre_returns, post_returns,
      [](std::span<const double> pre, std::span<const double> post) -> StatisticValue {
        const double vp = sample_variance(pre);
        if (!(vp > 0.0)) throw Error(ErrorKind::ZeroPreVariance, "resampled pre variance is zero");
        return {sample_variance(post) / vp, std::nullopt};
      },
      two_sample, alpha);
  out.ci_low = summary.ci_low;
  out.ci_high = summary.ci_high;
  out.alpha = alpha;
  out.iterations = summary.iterations;
  out.seed = summary.seed;
  out.degenerate_count = summary.degenerate_count;
  return out;
}

}  // namespace evwin
