#include "evwin/anomaly.hpp"

#include <algorithm>
#include <cmath>

#include "evwin/descriptive.hpp"
#include "evwin/error.hpp"

namespace evwin {

SegmentFeatures build_features(const ObservationSeries& segment, const ObservationSeries& context) {
  const auto& cdates = context.dates();
  SegmentFeatures out;
  std::vector<Date> dates;
  for (std::size_t i = 0; i < segment.size(); ++i) {
    if (segment.missing()[i]) continue;
    const Date d = segment.dates()[i];
    const auto it = std::lower_bound(cdates.begin(), cdates.end(), d);
    if (it == cdates.end() || *it != d) {
      throw Error(ErrorKind::InvalidArgument, "context series lacks segment date " + d.iso());
    }
    const auto k = static_cast<std::size_t>(it - cdates.begin());
    if (k == 0 || context.missing()[k - 1]) continue;  // no one-day return available
    dates.push_back(d);
    out.levels.push_back(segment.values()[i]);
    out.returns.push_back(std::log(segment.values()[i] / context.values()[k - 1]));
  }
  if (dates.size() < 3) throw Error(ErrorKind::InsufficientData, "too few rows with a one-day return");

  out.medians = {median(out.levels), median(out.returns)};
  out.mads = {mad(out.levels), mad(out.returns)};
  if (!(out.mads[0] > 0.0) || !(out.mads[1] > 0.0)) {
    throw Error(ErrorKind::ZeroMAD, "feature with zero median absolute deviation");
  }
  out.matrix.dims = 2;
  out.matrix.dates = std::move(dates);
  out.matrix.values.reserve(out.levels.size() * 2);
  for (std::size_t r = 0; r < out.levels.size(); ++r) {
    out.matrix.values.push_back((out.levels[r] - out.medians[0]) / out.mads[0]);
    out.matrix.values.push_back((out.returns[r] - out.medians[1]) / out.mads[1]);
  }
  return out;
}

std::vector<int> iqr_detector(std::span<const double> values) {
  if (values.size() < 4) throw Error(ErrorKind::InsufficientData, "IQR rule needs at least 4 values");
  const double q1 = quantile(values, 0.25);
  const double q3 = quantile(values, 0.75);
  const double fence = 1.5 * (q3 - q1);
  std::vector<int> votes(values.size());
  std::transform(values.begin(), values.end(), votes.begin(),
                 [&](double x) { return (x < q1 - fence || x > q3 + fence) ? -1 : 1; });
  return votes;
}

std::string_view to_string(Detector d) {
  switch (d) {
    case Detector::IsolationForest: return "isolation_forest";
    case Detector::OneClassSvm: return "one_class_svm";
    case Detector::Statistical: return "statistical";
  }
  return "unknown";
}

std::vector<double> min_max_normalize(std::span<const double> values) {
  std::vector<double> out(values.size(), 0.0);
  if (values.empty()) return out;
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  const double range = *hi - *lo;
  if (!(range > 0.0)) return out;
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - *lo) / range;
  return out;
}

bool majority_anomaly(const std::array<int, 3>& votes) {
  return std::count(votes.begin(), votes.end(), -1) >= 2;
}

std::vector<AnomalyVerdict> ensemble(std::span<const Date> dates, const std::array<MethodOutput, 3>& methods,
                                     const std::array<double, 3>& weights) {
  const std::size_t n = dates.size();
  for (const auto& m : methods) {
    if (m.anomaly_scores.size() != n || m.votes.size() != n) {
      throw Error(ErrorKind::MethodOutputMismatch, "detector outputs cover different date sets");
    }
  }
  std::array<std::vector<double>, 3> normalized;
  for (std::size_t m = 0; m < 3; ++m) normalized[m] = min_max_normalize(methods[m].anomaly_scores);

  std::vector<AnomalyVerdict> out(n);
  std::vector<double> psi(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto& v = out[i];
    v.date = dates[i];
    for (std::size_t m = 0; m < 3; ++m) {
      v.votes[m] = methods[m].votes[i];
      v.raw_scores[m] = methods[m].anomaly_scores[i];
      v.normalized_scores[m] = normalized[m][i];
      v.weighted_score += weights[m] * normalized[m][i];
    }
    psi[i] = v.weighted_score;
    v.is_anomaly = majority_anomaly(v.votes);
  }
  const auto scaled = min_max_normalize(psi);
  for (std::size_t i = 0; i < n; ++i) out[i].ensemble_score = scaled[i];
  return out;
}

AnomalyReport detect_anomalies(const ObservationSeries& segment, const ObservationSeries& context,
                               const AnomalyParams& params) {
  const double wsum = params.weights[0] + params.weights[1] + params.weights[2];
  if (std::abs(wsum - 1.0) > 1e-9) throw Error(ErrorKind::InvalidArgument, "ensemble weights must sum to 1");

  const auto features = build_features(segment, context);
  const auto forest = isolation_forest(features.matrix, params.forest);
  const auto svm = one_class_svm(features.matrix, params.svm);
  const auto stat_votes = iqr_detector(features.levels);

  std::array<MethodOutput, 3> methods;
  methods[0] = {forest.scores, forest.votes};
  methods[1].votes = svm.votes;
  methods[1].anomaly_scores.resize(svm.decision_values.size());
  std::transform(svm.decision_values.begin(), svm.decision_values.end(), methods[1].anomaly_scores.begin(),
                 [](double f) { return -f; });
  methods[2].votes = stat_votes;
  methods[2].anomaly_scores.resize(stat_votes.size());
  std::transform(stat_votes.begin(), stat_votes.end(), methods[2].anomaly_scores.begin(),
                 [](int v) { return v == -1 ? 1.0 : 0.0; });

  AnomalyReport report;
  report.verdicts = ensemble(features.matrix.dates, methods, params.weights);
  report.levels = features.levels;
  report.returns = features.returns;
  report.observed_count = segment.observed_count();
  report.anomaly_count = static_cast<std::size_t>(
      std::count_if(report.verdicts.begin(), report.verdicts.end(), [](const auto& v) { return v.is_anomaly; }));
  report.anomaly_fraction = static_cast<double>(report.anomaly_count) / static_cast<double>(report.observed_count);
  report.forest_threshold = forest.threshold;
  report.svm_rho = svm.rho;
  report.svm_gamma = svm.gamma;
  return report;
}

}  // namespace evwin
