#ifndef EVWIN_NPTESTS_HPP_
#define EVWIN_NPTESTS_HPP_

#include <optional>
#include <span>
#include <string_view>

#include "evwin/kernels.hpp"
#include "evwin/resample.hpp"

namespace evwin {

enum class TwoSampleTest { BrownForsythe, CliffsDelta, KolmogorovSmirnov, MannWhitneyU };
enum class EffectLabel { Negligible, Small, Medium, Large };

std::string_view to_string(TwoSampleTest test);
std::string_view to_string(EffectLabel label);

struct TwoSampleOutcome {
  TwoSampleTest test = TwoSampleTest::KolmogorovSmirnov;
  double statistic = 0.0;
  std::optional<double> classical_p;  // absent for Cliff's delta
  std::optional<BootstrapSummary> bootstrap;
  std::optional<EffectLabel> effect;  // Cliff's delta only
  /// Mann-Whitney only: n1*n2 - statistic, i.e. U counted from the second sample.
  std::optional<double> u_complement;
};

// Group convention: the first argument is the pre-event sample.

/// Brown-Forsythe (median-centred Levene) F for two groups, each n >= 3.
StatisticValue brown_forsythe_statistic(std::span<const double> a, std::span<const double> b);
TwoSampleOutcome brown_forsythe(std::span<const double> a, std::span<const double> b);

/// delta = (#{a_i > b_j} - #{a_i < b_j}) / (n_a n_b).
double cliffs_delta_value(std::span<const double> a, std::span<const double> b,
                          Execution exec = Execution::Parallel);
EffectLabel cliffs_effect_label(double delta);
/// Includes the bootstrap percentile interval of delta under independent resampling.
TwoSampleOutcome cliffs_delta(std::span<const double> a, std::span<const double> b, const BootstrapPlan& plan,
                              double alpha = 0.05);

/// sup |F_a - F_b| over the pooled sample points (right-continuous ECDFs).
double ks_statistic(std::span<const double> a, std::span<const double> b);
/// Asymptotic Kolmogorov p-value at effective size n_a n_b / (n_a + n_b).
double ks_p_value(double d, std::size_t na, std::size_t nb);
TwoSampleOutcome ks_two_sample(std::span<const double> a, std::span<const double> b);

struct MannWhitney {
  double u = 0.0;             // R_a - n_a (n_a + 1) / 2, with midranks
  double u_complement = 0.0;  // n_a n_b - u
  double p_value = 1.0;       // two-sided
  bool exact = false;
};

/// Exact permutation p-value when n_a + n_b <= 16, otherwise the tie-corrected
/// normal approximation with continuity correction.
MannWhitney mann_whitney(std::span<const double> a, std::span<const double> b);
TwoSampleOutcome mann_whitney_u(std::span<const double> a, std::span<const double> b);

/// Statistic adapters for the bootstrap engine.
StatisticValue ks_statistic_value(std::span<const double> a, std::span<const double> b);
StatisticValue mann_whitney_statistic_value(std::span<const double> a, std::span<const double> b);
StatisticValue cliffs_delta_statistic_value(std::span<const double> a, std::span<const double> b);

/// Attaches a bootstrap summary to a classical outcome.
TwoSampleOutcome with_bootstrap(TwoSampleOutcome outcome, std::span<const double> a, std::span<const double> b,
                                const BootstrapPlan& plan, double alpha = 0.05);

}  // namespace evwin

#endif  // EVWIN_NPTESTS_HPP_
