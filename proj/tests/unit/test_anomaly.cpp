#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "evwin/anomaly.hpp"
#include "evwin/descriptive.hpp"
#include "evwin/error.hpp"
#include "test_util.hpp"

namespace evwin {
namespace {

FeatureMatrix matrix_from(const std::vector<double>& values, std::size_t dims) {
  FeatureMatrix m;
  m.dims = dims;
  m.values = values;
  for (std::size_t i = 0; i < m.rows(); ++i) m.dates.push_back(Date(2025, 1, 1).plus_days(static_cast<long long>(i)));
  return m;
}

// 100 standard-normal 2-D rows plus one row placed 10 MADs out on the first axis (last row).
FeatureMatrix planted(std::uint64_t seed) {
  auto v = test::normal_sample(seed, 200);
  std::vector<double> first;
  for (std::size_t i = 0; i < v.size(); i += 2) first.push_back(v[i]);
  v.push_back(median(first) + 10.0 * mad(first));
  v.push_back(0.0);
  return matrix_from(v, 2);
}

TEST(IsolationForest, AveragePathLength) {
  EXPECT_EQ(average_path_length(1), 0.0);
  EXPECT_DOUBLE_EQ(average_path_length(2), 1.0);
  // 2 H(255) - 2 * 255 / 256
  double h = 0.0;
  for (int i = 1; i <= 255; ++i) h += 1.0 / i;
  EXPECT_NEAR(average_path_length(256), 2.0 * h - 2.0 * 255.0 / 256.0, 1e-12);
}

TEST(IsolationForest, PlantedOutlierGetsMaximumScore) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto m = planted(seed);
    const auto r = isolation_forest(m, {.seed = seed});
    const auto top = std::max_element(r.scores.begin(), r.scores.end()) - r.scores.begin();
    EXPECT_EQ(static_cast<std::size_t>(top), m.rows() - 1);
    EXPECT_EQ(r.votes.back(), -1);
    EXPECT_EQ(r.subsample, m.rows());
  }
}

TEST(IsolationForest, IdenticalRowsGiveNoVotes) {
  const auto m = matrix_from(std::vector<double>(40, 1.25), 2);
  const auto r = isolation_forest(m, {.seed = 1});
  for (double s : r.scores) EXPECT_EQ(s, r.scores.front());
  for (int v : r.votes) EXPECT_EQ(v, 1);
}

TEST(IsolationForest, ReproducibleAcrossThreadsAndSerial) {
  const auto m = planted(3);
  const auto ref = isolation_forest(m, {.seed = 11, .execution = Execution::Serial});
  for (int t : {1, 2, 4, 7}) {
    kernels::set_thread_count(t);
    const auto r = isolation_forest(m, {.seed = 11});
    EXPECT_EQ(r.scores, ref.scores);
    EXPECT_EQ(r.votes, ref.votes);
  }
  kernels::set_thread_count(0);
  EXPECT_NE(isolation_forest(m, {.seed = 12}).scores, ref.scores);
}

TEST(IsolationForest, VotesRespectContamination) {
  const auto m = planted(4);
  const auto r = isolation_forest(m, {.seed = 2});
  const auto flagged = std::count(r.votes.begin(), r.votes.end(), -1);
  EXPECT_LE(flagged, static_cast<long>(std::ceil(0.05 * static_cast<double>(m.rows()))));
  EXPECT_GE(flagged, 1);
  EXPECT_THROW(isolation_forest(matrix_from(std::vector<double>(14, 1.0), 2)), Error);
}

TEST(OneClassSvm, DualConstraintsAndKkt) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto m = matrix_from(test::normal_sample(seed, 2 * (40 + seed * 5)), 2);
    const auto model = OneClassSvm::fit(m);
    double sum = 0.0;
    for (double a : model.alpha()) {
      EXPECT_GE(a, 0.0);
      EXPECT_LE(a, model.upper_bound());
      sum += a;
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
    EXPECT_LT(model.kkt_gap(), 1e-6);
    // Complementary slackness on the freshly computed decision values.
    for (std::size_t i = 0; i < model.alpha().size(); ++i) {
      const double a = model.alpha()[i], f = model.training_decision()[i];
      if (a <= 0.0) EXPECT_GE(f, -1e-6);
      if (a >= model.upper_bound()) EXPECT_LE(f, 1e-6);
      if (a > 0.0 && a < model.upper_bound()) EXPECT_NEAR(f, 0.0, 1e-6);
    }
  }
}

TEST(OneClassSvm, NuBoundsTrainingOutlierFraction) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::size_t n = 60 + seed % 50;
    const auto m = matrix_from(test::normal_sample(7000 + seed, 2 * n), 2);
    const auto r = one_class_svm(m);
    const double frac = static_cast<double>(std::count(r.votes.begin(), r.votes.end(), -1)) / static_cast<double>(n);
    EXPECT_LE(frac, 0.05 + 2.0 / static_cast<double>(n)) << seed;
  }
}

// An isolated row only sees its own kernel bump, f = alpha - rho (+ tiny cross terms),
// so the optimum makes it a support vector on the boundary with alpha close to rho.
TEST(OneClassSvm, PlantedOutlierSitsOnBoundary) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto model = OneClassSvm::fit(planted(100 + seed));
    EXPECT_GT(model.alpha().back(), 0.0) << seed;
    EXPECT_NEAR(model.training_decision().back(), 0.0, model.tolerance()) << seed;
    EXPECT_NEAR(model.alpha().back() / model.rho(), 1.0, 0.02) << seed;
  }
}

TEST(OneClassSvm, DuplicatedRowsKeepSigns) {
  const auto m = matrix_from(test::normal_sample(55, 120), 2);
  auto doubled = m;
  doubled.values.insert(doubled.values.end(), m.values.begin(), m.values.end());
  doubled.dates.clear();
  for (std::size_t i = 0; i < doubled.rows(); ++i) doubled.dates.push_back(Date(2025, 1, 1).plus_days(static_cast<long long>(i)));
  const OneClassSvmParams p{.gamma = auto_gamma(m)};
  const auto a = OneClassSvm::fit(m, p), b = OneClassSvm::fit(doubled, p);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double fa = a.decision(m.row(i)), fb = b.decision(m.row(i));
    if (std::abs(fa) > 1e-5) {
      EXPECT_EQ(fa > 0, fb > 0) << i;
    }
    EXPECT_NEAR(fa, fb, 2e-6);
  }
}

TEST(OneClassSvm, DecisionMatchesTrainingValues) {
  const auto m = matrix_from(test::normal_sample(9, 100), 2);
  const auto model = OneClassSvm::fit(m);
  for (std::size_t i = 0; i < m.rows(); ++i) EXPECT_NEAR(model.decision(m.row(i)), model.training_decision()[i], 1e-12);
  EXPECT_THROW(OneClassSvm::fit(matrix_from(std::vector<double>(8, 0.0), 2)), Error);
}

TEST(OneClassSvm, ParallelGramMatchesSerial) {
  const auto m = matrix_from(test::normal_sample(19, 160), 2);
  const auto a = OneClassSvm::fit(m, {.execution = Execution::Serial});
  const auto b = OneClassSvm::fit(m, {.execution = Execution::Parallel});
  EXPECT_EQ(a.alpha(), b.alpha());
  EXPECT_EQ(a.rho(), b.rho());
}

TEST(IqrDetector, Examples) {
  const std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8, 9, 100};
  const auto votes = iqr_detector(v);
  for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(votes[i], 1);
  EXPECT_EQ(votes[9], -1);
  for (int x : iqr_detector(std::vector<double>(6, 3.0))) EXPECT_EQ(x, 1);
  for (int x : iqr_detector(std::vector<double>{-2, -1, 0, 1, 2})) EXPECT_EQ(x, 1);
  EXPECT_THROW(iqr_detector(std::vector<double>{1, 2, 3}), Error);
}

std::array<MethodOutput, 3> outputs(std::size_t n) {
  std::array<MethodOutput, 3> m;
  for (std::size_t k = 0; k < 3; ++k) {
    m[k].votes.assign(n, 1);
    for (std::size_t i = 0; i < n; ++i) m[k].anomaly_scores.push_back(static_cast<double>((i * (k + 3)) % 7));
  }
  return m;
}

TEST(Ensemble, VotingRule) {
  std::vector<Date> dates;
  for (int i = 0; i < 10; ++i) dates.push_back(Date(2025, 2, 1).plus_days(i));
  auto m = outputs(10);
  for (const auto& v : ensemble(dates, m)) EXPECT_FALSE(v.is_anomaly);
  m[0].votes[4] = -1;
  EXPECT_FALSE(ensemble(dates, m)[4].is_anomaly);
  m[2].votes[4] = -1;
  EXPECT_TRUE(ensemble(dates, m)[4].is_anomaly);
  m[2].votes[4] = 1;
  m[1].votes[4] = -1;
  EXPECT_TRUE(ensemble(dates, m)[4].is_anomaly);
  m[0].votes[4] = 1;
  EXPECT_FALSE(ensemble(dates, m)[4].is_anomaly);
}

TEST(Ensemble, ScoresAreNormalizedAndWeighted) {
  std::vector<Date> dates;
  for (int i = 0; i < 10; ++i) dates.push_back(Date(2025, 2, 1).plus_days(i));
  const auto m = outputs(10);
  const auto v = ensemble(dates, m);
  double hi = 0.0;
  for (const auto& x : v) {
    EXPECT_GE(x.ensemble_score, 0.0);
    EXPECT_LE(x.ensemble_score, 1.0);
    hi = std::max(hi, x.ensemble_score);
    EXPECT_NEAR(x.weighted_score,
                0.4 * x.normalized_scores[0] + 0.4 * x.normalized_scores[1] + 0.2 * x.normalized_scores[2], 1e-15);
  }
  EXPECT_EQ(hi, 1.0);
  auto bad = m;
  bad[1].votes.pop_back();
  try {
    ensemble(dates, bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MethodOutputMismatch);
  }
}

TEST(MinMax, ConstantMapsToZero) {
  for (double x : min_max_normalize(std::vector<double>(5, 2.0))) EXPECT_EQ(x, 0.0);
  const auto s = min_max_normalize(std::vector<double>{2, 4, 3});
  EXPECT_EQ(s, (std::vector<double>{0.0, 1.0, 0.5}));
}

TEST(Features, UseContextReturnAndRobustScaling) {
  const auto full = test::daily_series(Date(2025, 1, 1), {100, 101, 103, 102, 104, 105, 103, 106, 108, 107, 109});
  const auto seg = segment(full, Date(2025, 1, 5));
  const auto f = build_features(seg.post, seg.full);
  ASSERT_EQ(f.matrix.rows(), seg.post.size());
  EXPECT_DOUBLE_EQ(f.returns.front(), std::log(104.0 / 102.0));
  EXPECT_DOUBLE_EQ(f.matrix.row(0)[0], (104.0 - f.medians[0]) / f.mads[0]);
}

}  // namespace
}  // namespace evwin
