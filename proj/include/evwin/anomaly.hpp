#ifndef EVWIN_ANOMALY_HPP_
#define EVWIN_ANOMALY_HPP_

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "evwin/date.hpp"
#include "evwin/kernels.hpp"
#include "evwin/series.hpp"

namespace evwin {

/// Row-major feature rows, one per date.
struct FeatureMatrix {
  std::vector<Date> dates;
  std::size_t dims = 0;
  std::vector<double> values;  // rows * dims

  std::size_t rows() const { return dims == 0 ? 0 : values.size() / dims; }
  std::span<const double> row(std::size_t i) const { return {values.data() + i * dims, dims}; }
};

/// Robust-standardised (level, one-day log return) features for the observed
/// dates of `segment`. Returns are taken from `context` (normally the full
/// series) so the first day of a segment still has its previous-day return;
/// dates whose previous trading day is missing are dropped.
struct SegmentFeatures {
  FeatureMatrix matrix;
  std::vector<double> levels;
  std::vector<double> returns;
  std::array<double, 2> medians{};
  std::array<double, 2> mads{};
};

SegmentFeatures build_features(const ObservationSeries& segment, const ObservationSeries& context);

// ---------------------------------------------------------------- isolation forest

/// Average unsuccessful-search path length c(n) = 2 H(n-1) - 2 (n-1) / n; c(1) = 0.
double average_path_length(std::size_t n);

struct IsolationForestParams {
  std::size_t trees = 300;
  std::size_t subsample = 256;
  double contamination = 0.05;
  std::uint64_t seed = 0;
  Execution execution = Execution::Parallel;
};

struct IsolationForestResult {
  std::vector<double> scores;  // s(x, psi), larger is more anomalous
  std::vector<int> votes;      // -1 anomaly, +1 normal
  std::vector<double> mean_path_length;
  double threshold = 0.0;  // (1 - contamination)-quantile of the scores
  std::size_t subsample = 0;
};

IsolationForestResult isolation_forest(const FeatureMatrix& features, const IsolationForestParams& params = {});

// ---------------------------------------------------------------- one-class SVM

struct OneClassSvmParams {
  double nu = 0.05;
  double gamma = 0.0;  // <= 0 selects 1 / (d * var(X))
  double tolerance = 1e-6;
  std::size_t max_iterations = 10'000'000;
  Execution execution = Execution::Parallel;
};

/// nu-one-class SVM with an RBF kernel, solved in the dual
///   min 1/2 a'Ka  s.t.  0 <= a_i <= 1/(nu n),  sum a_i = 1
/// by SMO with second-order working-set selection.
class OneClassSvm {
 public:
  static OneClassSvm fit(const FeatureMatrix& features, const OneClassSvmParams& params = {});

  double decision(std::span<const double> x) const;

  const std::vector<double>& alpha() const { return alpha_; }
  /// Decision values on the training rows.
  const std::vector<double>& training_decision() const { return training_decision_; }
  double rho() const { return rho_; }
  double gamma() const { return gamma_; }
  double upper_bound() const { return upper_bound_; }
  std::size_t iterations() const { return iterations_; }
  /// Final maximal KKT violation (m(a) - M(a)).
  double kkt_gap() const { return kkt_gap_; }
  double tolerance() const { return tolerance_; }

 private:
  std::size_t dims_ = 0;
  std::vector<double> points_;
  std::vector<double> alpha_;
  std::vector<double> training_decision_;
  double rho_ = 0.0;
  double gamma_ = 0.0;
  double upper_bound_ = 0.0;
  double tolerance_ = 0.0;
  double kkt_gap_ = 0.0;
  std::size_t iterations_ = 0;
};

/// 1/(d * population variance of all feature entries); 1 when that variance is zero.
double auto_gamma(const FeatureMatrix& features);

struct OneClassSvmResult {
  std::vector<double> decision_values;
  std::vector<int> votes;
  double rho = 0.0;
  double gamma = 0.0;
  std::size_t iterations = 0;
};

OneClassSvmResult one_class_svm(const FeatureMatrix& features, const OneClassSvmParams& params = {});

// ---------------------------------------------------------------- IQR rule

/// -1 where x < Q1 - 1.5 IQR or x > Q3 + 1.5 IQR on the raw values, +1 otherwise.
std::vector<int> iqr_detector(std::span<const double> values);

// ---------------------------------------------------------------- ensemble

enum class Detector { IsolationForest = 0, OneClassSvm = 1, Statistical = 2 };
std::string_view to_string(Detector d);

struct MethodOutput {
  std::vector<double> anomaly_scores;  // oriented: larger is more anomalous
  std::vector<int> votes;
};

struct AnomalyVerdict {
  Date date;
  std::array<int, 3> votes{};
  std::array<double, 3> raw_scores{};
  std::array<double, 3> normalized_scores{};
  double weighted_score = 0.0;  // Psi before normalisation
  double ensemble_score = 0.0;  // min-max normalised Psi
  bool is_anomaly = false;
};

/// Min-max scaling to [0, 1]; a constant input maps to all zeros.
std::vector<double> min_max_normalize(std::span<const double> values);

/// Two-of-three majority over detector votes.
bool majority_anomaly(const std::array<int, 3>& votes);

std::vector<AnomalyVerdict> ensemble(std::span<const Date> dates, const std::array<MethodOutput, 3>& methods,
                                     const std::array<double, 3>& weights = {0.4, 0.4, 0.2});

struct AnomalyParams {
  IsolationForestParams forest;
  OneClassSvmParams svm;
  std::array<double, 3> weights{0.4, 0.4, 0.2};
};

struct AnomalyReport {
  std::vector<AnomalyVerdict> verdicts;
  std::vector<double> levels;
  std::vector<double> returns;
  std::size_t anomaly_count = 0;
  double anomaly_fraction = 0.0;  // over the segment's observed count
  std::size_t observed_count = 0;
  double forest_threshold = 0.0;
  double svm_rho = 0.0;
  double svm_gamma = 0.0;
};

/// Runs the three detectors over a segment and combines them.
AnomalyReport detect_anomalies(const ObservationSeries& segment, const ObservationSeries& context,
                               const AnomalyParams& params = {});

}  // namespace evwin

#endif  // EVWIN_ANOMALY_HPP_
