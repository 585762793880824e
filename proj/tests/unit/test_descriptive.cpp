#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "evwin/descriptive.hpp"
#include "evwin/error.hpp"
#include "test_util.hpp"

namespace evwin {
namespace {

// Hosking's sample L-moment of order r as the average over all r-subsets of
// (1/r) sum_k (-1)^k C(r-1, k) x_{r-k:r}. Exponential cost; small n only.
double l_moment_by_subsets(std::vector<double> x, int r) {
  std::sort(x.begin(), x.end());
  const int n = static_cast<int>(x.size());
  double total = 0.0;
  long long subsets = 0;
  std::vector<int> pick(static_cast<std::size_t>(r));
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    double v = 0.0;
    long long binom = 1;
    for (int k = 0; k < r; ++k) {
      v += (k % 2 == 0 ? 1.0 : -1.0) * static_cast<double>(binom) * x[static_cast<std::size_t>(pick[static_cast<std::size_t>(r - 1 - k)])];
      binom = binom * (r - 1 - k) / (k + 1);
    }
    total += v / r;
    ++subsets;
    int i = r - 1;
    while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - r + i) --i;
    if (i < 0) break;
    ++pick[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
  }
  return total / static_cast<double>(subsets);
}

// beta_j = E[max of j+1 draws without replacement] / (j+1).
double pwm_by_subsets(std::vector<double> x, int j) {
  const int n = static_cast<int>(x.size());
  double total = 0.0;
  long long count = 0;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (std::popcount(mask) != j + 1) continue;
    double m = -INFINITY;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) m = std::max(m, x[static_cast<std::size_t>(i)]);
    total += m;
    ++count;
  }
  return total / static_cast<double>(count) / (j + 1);
}

double type7(std::vector<double> x, double p) {
  std::sort(x.begin(), x.end());
  const double h = (static_cast<double>(x.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, x.size() - 1);
  return x[lo] + (h - static_cast<double>(lo)) * (x[hi] - x[lo]);
}

TEST(Quantile, Type7Interpolation) {
  const std::vector<double> v{1, 2, 3, 4, 5, 6, 7, 8, 9, 100};
  EXPECT_DOUBLE_EQ(quantile(v, 0.25), 3.25);
  EXPECT_DOUBLE_EQ(quantile(v, 0.75), 7.75);
  EXPECT_DOUBLE_EQ(median(v), 5.5);
  EXPECT_DOUBLE_EQ(quantile(v, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(quantile(v, 1.0), 100.0);
}

TEST(Summarize, SymmetricSample) {
  const std::vector<double> v{1, 2, 3, 4, 5};
  const auto s = summarize(v);
  EXPECT_EQ(s.count, 5u);
  EXPECT_DOUBLE_EQ(s.mean, 3.0);
  EXPECT_DOUBLE_EQ(s.median, 3.0);
  ASSERT_TRUE(s.skewness);
  EXPECT_NEAR(*s.skewness, 0.0, 1e-15);
  EXPECT_DOUBLE_EQ(s.std_dev, std::sqrt(2.5));
  EXPECT_DOUBLE_EQ(s.mad, 1.0);
  EXPECT_DOUBLE_EQ(s.iqr, 2.0);
  // Biased moments: m4/m2^2 - 3 = 6.8/4 - 3.
  EXPECT_NEAR(*s.excess_kurtosis, -1.3, 1e-12);
}

TEST(Summarize, ConstantSampleHasUndefinedShape) {
  const auto s = summarize(std::vector<double>{1, 1, 1, 1});
  EXPECT_EQ(s.mean, 1.0);
  EXPECT_EQ(s.median, 1.0);
  EXPECT_EQ(s.std_dev, 0.0);
  EXPECT_EQ(s.mad, 0.0);
  EXPECT_EQ(s.iqr, 0.0);
  EXPECT_FALSE(s.skewness);
  EXPECT_FALSE(s.excess_kurtosis);
}

TEST(Summarize, NeedsFourValues) {
  EXPECT_THROW(summarize(std::vector<double>{1, 2, 3}), Error);
}

TEST(Summarize, OrderingInvariantHolds) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto v = test::exponential_sample(seed, 37);
    const auto s = summarize(v);
    for (double c : {s.mean, s.median, s.trimmed_mean_10, s.trimmed_mean_20}) {
      EXPECT_LE(s.min, c);
      EXPECT_LE(c, s.max);
    }
  }
}

TEST(Summarize, LocationScaleEquivariance) {
  const auto x = test::exponential_sample(5, 41);
  const auto base = summarize(x);
  for (double a : {2.5, -0.75}) {
    const double b = 13.0;
    std::vector<double> y(x.size());
    std::transform(x.begin(), x.end(), y.begin(), [&](double v) { return a * v + b; });
    const auto t = summarize(y);
    EXPECT_NEAR(t.mean, a * base.mean + b, 1e-12);
    EXPECT_NEAR(t.median, a * base.median + b, 1e-12);
    EXPECT_NEAR(t.std_dev, std::abs(a) * base.std_dev, 1e-12);
    EXPECT_NEAR(t.mad, std::abs(a) * base.mad, 1e-12);
    EXPECT_NEAR(t.iqr, std::abs(a) * base.iqr, 1e-12);
    EXPECT_NEAR(*t.skewness, (a > 0 ? 1 : -1) * *base.skewness, 1e-12);
    EXPECT_NEAR(*t.excess_kurtosis, *base.excess_kurtosis, 1e-12);
    if (a > 0) {
      EXPECT_NEAR(t.min, a * base.min + b, 1e-12);
    } else {
      EXPECT_NEAR(t.min, a * base.max + b, 1e-12);
    }
  }
}

TEST(TrimmedMean, Examples) {
  EXPECT_DOUBLE_EQ(trimmed_mean(std::vector<double>{1, 2, 3, 4, 100}, 0.2), 3.0);
  EXPECT_DOUBLE_EQ(trimmed_mean(std::vector<double>{1, 2, 3, 4, 100}, 0.0), 22.0);
  for (double a : {0.0, 0.1, 0.3, 0.49}) EXPECT_DOUBLE_EQ(trimmed_mean(std::vector<double>{5, 5, 5}, a), 5.0);
  EXPECT_THROW(trimmed_mean(std::vector<double>{1, 2}, 0.5), Error);
}

TEST(TrimmedMean, MonotoneInEachValue) {
  auto x = test::normal_sample(9, 23);
  const double before = trimmed_mean(x, 0.2);
  for (std::size_t i = 0; i < x.size(); ++i) {
    auto y = x;
    y[i] += 0.5;
    EXPECT_GE(trimmed_mean(y, 0.2), before);
  }
}

TEST(TrimmedMean, MatchesDirectDefinition) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    auto x = test::normal_sample(seed, 5 + seed % 30);
    for (double a : {0.1, 0.2}) {
      auto s = x;
      std::sort(s.begin(), s.end());
      const auto k = static_cast<std::size_t>(std::floor(a * static_cast<double>(s.size())));
      double sum = 0.0;
      for (std::size_t i = k; i < s.size() - k; ++i) sum += s[i];
      EXPECT_NEAR(trimmed_mean(x, a), sum / static_cast<double>(s.size() - 2 * k), 1e-12);
    }
  }
}

TEST(LMoments, PwmOfTwoPoints) {
  const auto b = probability_weighted_moments(std::vector<double>{0.0, 1.0}, 2);
  EXPECT_DOUBLE_EQ(b[0], 0.5);
  EXPECT_DOUBLE_EQ(b[1], 0.5);
  EXPECT_DOUBLE_EQ(2 * b[1] - b[0], 0.5);
}

TEST(LMoments, PwmMatchesSubsetEnumeration) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 4 + seed % 3;
    const auto x = test::normal_sample(seed, n);
    const auto b = probability_weighted_moments(x, 4);
    for (int j = 0; j < 4; ++j) EXPECT_NEAR(b[static_cast<std::size_t>(j)], pwm_by_subsets(x, j), 1e-12);
  }
}

TEST(LMoments, MatchSubsetDefinition) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto x = test::exponential_sample(seed, 4 + seed % 6);
    const auto l = l_moments(x);
    EXPECT_NEAR(l.l1, l_moment_by_subsets(x, 1), 1e-12);
    EXPECT_NEAR(l.l2, l_moment_by_subsets(x, 2), 1e-12);
    EXPECT_NEAR(l.l3, l_moment_by_subsets(x, 3), 1e-12);
    EXPECT_NEAR(l.l4, l_moment_by_subsets(x, 4), 1e-12);
  }
}

TEST(LMoments, MeanSymmetryAndBounds) {
  const std::vector<double> sym{1, 2, 3, 4, 5};
  const auto l = l_moments(sym);
  EXPECT_NEAR(l.tau3, 0.0, 1e-12);
  const auto x = test::exponential_sample(2, 200);
  const auto e = l_moments(x);
  EXPECT_NEAR(e.l1, std::accumulate(x.begin(), x.end(), 0.0) / 200.0, 1e-12);
  EXPECT_GT(e.l2, 0.0);
  EXPECT_LT(std::abs(e.tau3), 1.0);
  EXPECT_GT(e.tau4, -0.25);
  EXPECT_LT(e.tau4, 1.0);
  EXPECT_THROW(l_moments(std::vector<double>{3, 3, 3, 3}), Error);
}

TEST(LMoments, AffineLinearity) {
  const auto x = test::exponential_sample(17, 30);
  const auto base = l_moments(x);
  for (double a : {3.0, -2.0}) {
    std::vector<double> y(x.size());
    std::transform(x.begin(), x.end(), y.begin(), [&](double v) { return a * v + 1.5; });
    const auto t = l_moments(y);
    EXPECT_NEAR(t.l1, a * base.l1 + 1.5, 1e-12);
    EXPECT_NEAR(t.l2, std::abs(a) * base.l2, 1e-12);
    EXPECT_NEAR(t.tau3, (a > 0 ? 1 : -1) * base.tau3, 1e-12);
    EXPECT_NEAR(t.tau4, base.tau4, 1e-12);
  }
}

TEST(Kde, SilvermanBandwidthMatchesHandEvaluation) {
  const auto x = test::normal_sample(2024, 100);
  const double m = std::accumulate(x.begin(), x.end(), 0.0) / 100.0;
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  const double sd = std::sqrt(ss / 99.0);
  const double iqr = type7(x, 0.75) - type7(x, 0.25);
  const double h = 0.9 * std::min(sd, iqr / 1.34) * std::pow(100.0, -0.2);
  EXPECT_DOUBLE_EQ(silverman_bandwidth(x), h);
}

TEST(Kde, IntegratesToOneAndIsNonNegative) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto x = test::exponential_sample(seed, 60);
    const auto d = kde(x);
    EXPECT_EQ(d.grid.size(), 512u);
    for (double f : d.density) EXPECT_GE(f, 0.0);
    EXPECT_NEAR(trapezoid(d.grid, d.density), 1.0, 0.01);
  }
}

TEST(Kde, TwoPointSampleIsSymmetric) {
  const auto d = kde(std::vector<double>{-1.0, 1.0}, 513);
  for (std::size_t i = 0; i < d.grid.size(); ++i) {
    EXPECT_NEAR(d.density[i], d.density[d.grid.size() - 1 - i], 1e-10);
  }
  EXPECT_NEAR(d.grid[256], 0.0, 1e-12);
}

TEST(Kde, ConstantSampleHasNoBandwidth) {
  try {
    kde(std::vector<double>{2, 2, 2, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroBandwidth);
  }
}

}  // namespace
}  // namespace evwin
