#ifndef EVWIN_RESAMPLE_HPP_
#define EVWIN_RESAMPLE_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "evwin/kernels.hpp"

namespace evwin {

enum class ResampleScheme { TwoSampleIndependent, SingleSample };

// Tags mixed into the sub-seed so the two groups of one iteration draw from
// unrelated streams.
enum class ResampleGroup : std::uint64_t { Single = 0, Pre = 1, Post = 2 };

struct BootstrapPlan {
  std::size_t iterations = 10'000;
  std::uint64_t base_seed = 0;
  ResampleScheme scheme = ResampleScheme::TwoSampleIndependent;
  Execution execution = Execution::Parallel;
};

struct BootstrapSummary {
  double observed_statistic = 0.0;
  double empirical_p = 0.0;
  /// Fraction of resamples with p*_b < alpha; absent when the statistic has no p-value.
  std::optional<double> rejection_ratio;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double alpha = 0.05;
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
  std::size_t degenerate_count = 0;
};

/// A two-sample procedure evaluated on (possibly resampled) data.
struct StatisticValue {
  double statistic = 0.0;
  std::optional<double> p_value;
};
using TwoSampleStatistic = std::function<StatisticValue(std::span<const double>, std::span<const double>)>;

/// Draws `sample.size()` values with replacement; fully determined by
/// (plan.base_seed, iteration, group).
std::vector<double> resample(std::span<const double> sample, std::uint64_t base_seed, std::size_t iteration,
                             ResampleGroup group);

std::pair<std::vector<double>, std::vector<double>> resample_pair(std::span<const double> pre,
                                                                  std::span<const double> post,
                                                                  const BootstrapPlan& plan, std::size_t iteration);

/// One bootstrap replicate. `degenerate` marks an iteration where the statistic
/// was undefined on the resample; such iterations count toward B with p*_b = 1.
struct Replicate {
  double statistic = 0.0;
  double p_value = 1.0;
  bool degenerate = false;
};

std::vector<Replicate> bootstrap_replicates(std::span<const double> pre, std::span<const double> post,
                                            const TwoSampleStatistic& statistic, const BootstrapPlan& plan);

BootstrapSummary bootstrap_test(std::span<const double> pre, std::span<const double> post,
                                const TwoSampleStatistic& statistic, const BootstrapPlan& plan, double alpha = 0.05);

/// Single-sample scheme: replicate values of a one-sample statistic.
std::vector<double> bootstrap_statistic(std::span<const double> sample,
                                        const std::function<double(std::span<const double>)>& statistic,
                                        const BootstrapPlan& plan);

/// (Q_{alpha/2}, Q_{1-alpha/2}) with type-7 interpolation.
std::pair<double, double> percentile_ci(std::span<const double> values, double alpha);

}  // namespace evwin

#endif  // EVWIN_RESAMPLE_HPP_
