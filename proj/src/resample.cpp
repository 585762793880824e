#include "evwin/resample.hpp"

#include <algorithm>

#include "evwin/descriptive.hpp"
#include "evwin/error.hpp"
#include "evwin/rng.hpp"

namespace evwin {
namespace {

bool is_degenerate(ErrorKind kind) {
  return kind == ErrorKind::DegenerateResample || kind == ErrorKind::DegenerateDeviations ||
         kind == ErrorKind::ZeroVariance || kind == ErrorKind::ZeroPreVariance;
}

}  // namespace

std::vector<double> resample(std::span<const double> sample, std::uint64_t base_seed, std::size_t iteration,
                             ResampleGroup group) {
  if (sample.empty()) throw Error(ErrorKind::EmptySample, "cannot resample an empty sample");
  SplitMix64 rng(derive_seed(base_seed, iteration, static_cast<std::uint64_t>(group)));
  std::vector<double> out(sample.size());
  for (auto& v : out) v = sample[rng.below(sample.size())];
  return out;
}

std::pair<std::vector<double>, std::vector<double>> resample_pair(std::span<const double> pre,
                                                                  std::span<const double> post,
                                                                  const BootstrapPlan& plan, std::size_t iteration) {
  if (pre.empty() || post.empty()) throw Error(ErrorKind::EmptySample, "both groups must be non-empty");
  if (iteration >= plan.iterations) throw Error(ErrorKind::InvalidArgument, "iteration index beyond plan");
  return {resample(pre, plan.base_seed, iteration, ResampleGroup::Pre),
          resample(post, plan.base_seed, iteration, ResampleGroup::Post)};
}

std::vector<Replicate> bootstrap_replicates(std::span<const double> pre, std::span<const double> post,
                                            const TwoSampleStatistic& statistic, const BootstrapPlan& plan) {
  if (plan.iterations < 1) throw Error(ErrorKind::InvalidArgument, "bootstrap needs at least one iteration");
  if (pre.empty() || post.empty()) throw Error(ErrorKind::EmptySample, "both groups must be non-empty");
  return kernels::map_indices<Replicate>(
      plan.iterations,
      [&](std::size_t b) {
        auto [pre_b, post_b] = resample_pair(pre, post, plan, b);
        try {
          const auto v = statistic(pre_b, post_b);
          return Replicate{v.statistic, v.p_value.value_or(1.0), false};
        } catch (const Error& e) {
          if (!is_degenerate(e.kind())) throw;
          return Replicate{0.0, 1.0, true};
        }
      },
      plan.execution);
}

BootstrapSummary bootstrap_test(std::span<const double> pre, std::span<const double> post,
                                const TwoSampleStatistic& statistic, const BootstrapPlan& plan, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::InvalidArgument, "alpha must be in (0, 1)");
  const auto observed = statistic(pre, post);
  const auto reps = bootstrap_replicates(pre, post, statistic, plan);

  BootstrapSummary out;
  out.observed_statistic = observed.statistic;
  out.alpha = alpha;
  out.iterations = plan.iterations;
  out.seed = plan.base_seed;

  std::size_t exceed = 0, reject = 0;
  std::vector<double> values;
  values.reserve(reps.size());
  for (const auto& r : reps) {
    if (r.degenerate) {
      ++out.degenerate_count;
      continue;
    }
    values.push_back(r.statistic);
    if (r.statistic >= observed.statistic) ++exceed;
    if (r.p_value < alpha) ++reject;
  }
  const auto b = static_cast<double>(plan.iterations);
  out.empirical_p = static_cast<double>(exceed) / b;
  if (observed.p_value) out.rejection_ratio = static_cast<double>(reject) / b;
  if (values.empty()) throw Error(ErrorKind::DegenerateResample, "every bootstrap resample was degenerate");
  std::tie(out.ci_low, out.ci_high) = percentile_ci(values, alpha);
  return out;
}

std::vector<double> bootstrap_statistic(std::span<const double> sample,
                                        const std::function<double(std::span<const double>)>& statistic,
                                        const BootstrapPlan& plan) {
  if (sample.empty()) throw Error(ErrorKind::EmptySample, "cannot resample an empty sample");
  return kernels::map_indices<double>(
      plan.iterations,
      [&](std::size_t b) { return statistic(resample(sample, plan.base_seed, b, ResampleGroup::Single)); },
      plan.execution);
}

std::pair<double, double> percentile_ci(std::span<const double> values, double alpha) {
  if (values.empty()) throw Error(ErrorKind::EmptySample, "percentile interval of no values");
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::InvalidArgument, "alpha must be in (0, 1)");
  std::vector<double> s(values.begin(), values.end());
  std::sort(s.begin(), s.end());
  return {quantile_sorted(s, alpha / 2.0), quantile_sorted(s, 1.0 - alpha / 2.0)};
}

}  // namespace evwin
