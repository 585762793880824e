#ifndef EVWIN_REPORT_HPP_
#define EVWIN_REPORT_HPP_

#include <filesystem>
#include <optional>
#include <vector>

#include "evwin/anomaly.hpp"
#include "evwin/config.hpp"
#include "evwin/descriptive.hpp"
#include "evwin/normality.hpp"
#include "evwin/nptests.hpp"
#include "evwin/series.hpp"
#include "evwin/volatility.hpp"

namespace evwin {

enum class Segment { Pre, Post, Full };

struct SegmentDescription {
  DescriptiveSummary summary;
  std::optional<LMomentSummary> l_moments;  // absent when the L-scale is zero
  std::optional<DensityEstimate> density;   // absent for constant samples
  std::size_t modified_z_flagged = 0;
};

struct FullReport {
  RunConfig config;
  SegmentedSeries segments;
  std::array<SegmentDescription, 3> descriptives;  // pre, post, full
  std::array<BatteryVerdict, 3> normality;         // pre, post, full
  std::vector<TwoSampleOutcome> tests;             // KS, MWU, BF, Cliff's delta
  AnomalyReport anomalies;                         // post segment
  VarianceComparison variance;
  std::vector<RollingVolatility> rolling;  // one per configured window, on full-series returns
  double headline_percent_change = 0.0;    // 100 (mean_post - mean_pre) / mean_pre
};

/// Describes a segment: summary, L-moments, KDE and the modified-Z outlier count.
SegmentDescription describe_segment(const ObservationSeries& series, const RunConfig& config);

/// Runs the four bootstrap-wrapped two-sample procedures in report order.
std::vector<TwoSampleOutcome> compare_segments(std::span<const double> pre, std::span<const double> post,
                                               const RunConfig& config);

VarianceComparison compare_volatility(const SegmentedSeries& segments, const RunConfig& config);

/// Loads the input, trims it to the configured window and segments it.
SegmentedSeries prepare_segments(const RunConfig& config);

/// The whole pipeline: segment, describe, normality battery, bootstrap tests,
/// anomaly ensemble on the post segment, volatility comparison. Module errors
/// are rethrown with the failing stage prepended to the message.
FullReport run_full(const RunConfig& config);

/// Writes report.json, table1.csv, table2.csv, anomalies.csv and plotdata/*.csv.
void write_outputs(const FullReport& report, const std::filesystem::path& dir);

}  // namespace evwin

#endif  // EVWIN_REPORT_HPP_
