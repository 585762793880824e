#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "evwin/error.hpp"
#include "evwin/nptests.hpp"
#include "evwin/rng.hpp"
#include "test_util.hpp"

namespace evwin {
namespace {

std::vector<double> integers(SplitMix64& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = static_cast<double>(rng.below(6));
  return v;
}

double delta_oracle(const std::vector<double>& a, const std::vector<double>& b) {
  long long s = 0;
  for (double x : a)
    for (double y : b) s += (x > y) - (x < y);
  return static_cast<double>(s) / static_cast<double>(a.size() * b.size());
}

// Rank-sum of `a` with midranks computed by counting, then U = R - n(n+1)/2.
double u_oracle(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pool = a;
  pool.insert(pool.end(), b.begin(), b.end());
  double r = 0.0;
  for (double x : a) {
    double less = 0, equal = 0;
    for (double y : pool) {
      less += y < x;
      equal += y == x;
    }
    r += less + (equal + 1.0) / 2.0;
  }
  const double n = static_cast<double>(a.size());
  return r - n * (n + 1.0) / 2.0;
}

double ks_oracle(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> pool = a;
  pool.insert(pool.end(), b.begin(), b.end());
  double d = 0.0;
  for (double t : pool) {
    const double fa = static_cast<double>(std::count_if(a.begin(), a.end(), [&](double x) { return x <= t; })) / a.size();
    const double fb = static_cast<double>(std::count_if(b.begin(), b.end(), [&](double x) { return x <= t; })) / b.size();
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

TEST(Oracles, SmallSamplesMatchBruteForceExactly) {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = integers(rng, 1 + rng.below(8));
    const auto b = integers(rng, 1 + rng.below(8));
    EXPECT_EQ(cliffs_delta_value(a, b, Execution::Serial), delta_oracle(a, b));
    EXPECT_EQ(cliffs_delta_value(a, b, Execution::Parallel), delta_oracle(a, b));
    EXPECT_EQ(mann_whitney(a, b).u, u_oracle(a, b));
    EXPECT_EQ(ks_statistic(a, b), ks_oracle(a, b));
  }
}

TEST(CliffsDelta, Examples) {
  const std::vector<double> a{1, 2}, b{3, 4};
  EXPECT_EQ(cliffs_delta_value(a, b), -1.0);
  EXPECT_EQ(cliffs_delta_value(b, a), 1.0);
  const auto x = test::normal_sample(1, 30);
  EXPECT_EQ(cliffs_delta_value(x, x), 0.0);
  EXPECT_EQ(cliffs_effect_label(0.0), EffectLabel::Negligible);
  EXPECT_EQ(cliffs_effect_label(0.146), EffectLabel::Negligible);
  EXPECT_EQ(cliffs_effect_label(-0.147), EffectLabel::Small);
  EXPECT_EQ(cliffs_effect_label(0.33), EffectLabel::Medium);
  EXPECT_EQ(cliffs_effect_label(-0.474), EffectLabel::Large);
  EXPECT_EQ(cliffs_effect_label(-0.922), EffectLabel::Large);
}

TEST(CliffsDelta, AntisymmetricAndBootstrapCi) {
  const auto a = test::normal_sample(3, 69, 0.0), b = test::normal_sample(4, 70, 1.5);
  EXPECT_EQ(cliffs_delta_value(a, b), -cliffs_delta_value(b, a));
  const auto out = cliffs_delta(a, b, BootstrapPlan{.iterations = 2000, .base_seed = 42});
  EXPECT_EQ(out.test, TwoSampleTest::CliffsDelta);
  EXPECT_FALSE(out.classical_p);
  ASSERT_TRUE(out.bootstrap);
  EXPECT_LE(out.bootstrap->ci_low, out.statistic);
  EXPECT_GE(out.bootstrap->ci_high, out.statistic);
  EXPECT_EQ(*out.effect, EffectLabel::Large);
}

TEST(MannWhitney, Examples) {
  const std::vector<double> a{1, 2}, b{3, 4};
  const auto m = mann_whitney(a, b);
  EXPECT_EQ(m.u, 0.0);
  EXPECT_EQ(m.u_complement, 4.0);  // n1 n2 + n1(n1+1)/2 - R1 = 4 + 3 - 3
  const std::vector<double> x{1, 2, 3, 4, 5};
  EXPECT_EQ(mann_whitney(x, x).u, 12.5);
}

TEST(MannWhitney, MatchesReference) {
  // scipy.stats.mannwhitneyu, method="exact", no ties.
  const std::vector<double> a{1.1, 3.2, 5.3, 0.4, 2.5, 9.1, 7.7}, b{4.1, 6.2, 8.3, 10.4, 11.5, 12.6, 6.9};
  const auto e = mann_whitney(a, b);
  EXPECT_TRUE(e.exact);
  EXPECT_EQ(e.u, 8.0);
  EXPECT_NEAR(e.p_value, 0.03787878787878788, 1e-12);
  // Ties, exact permutation over midranks (full enumeration of the 252 splits).
  const std::vector<double> s{1.5, 2, 2, 3, 7}, t{2, 4, 4.5, 6, 8};
  const auto te = mann_whitney(s, t);
  EXPECT_EQ(te.u, 6.0);
  EXPECT_NEAR(te.p_value, 0.20634920634920634, 1e-12);
}

TEST(MannWhitney, LargeSampleNormalApproximation) {
  std::vector<double> b;
  for (int i = 0; i < 25; ++i) b.push_back(std::exp(std::sin(i * 1.7) * 0.8) + 0.05 * i);
  const std::vector<double> a{2.1, 3.4, 1.9, 5.6, 4.4, 3.3, 2.8, 6.1, 4.0, 3.9, 2.2,
                              5.0, 4.7, 3.1, 2.6, 7.9, 3.0, 2.4, 4.1, 3.6, 5.2, 2.9};
  const auto m = mann_whitney(a, b);
  EXPECT_FALSE(m.exact);
  EXPECT_EQ(m.u, 506.0);  // scipy: continuity-corrected asymptotic p below
  EXPECT_NEAR(m.p_value, 8.911090933758688e-07, 1e-12);
}

TEST(MannWhitney, DualityAndInvariance) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto a = test::normal_sample(s, 12), b = test::normal_sample(s + 100, 15);
    EXPECT_EQ(mann_whitney(a, b).u + mann_whitney(b, a).u, 12.0 * 15.0);
    std::vector<double> ea(a.size()), eb(b.size());
    std::transform(a.begin(), a.end(), ea.begin(), [](double v) { return std::exp(v); });
    std::transform(b.begin(), b.end(), eb.begin(), [](double v) { return std::exp(v); });
    EXPECT_EQ(mann_whitney(ea, eb).u, mann_whitney(a, b).u);
    EXPECT_EQ(cliffs_delta_value(ea, eb), cliffs_delta_value(a, b));
    EXPECT_EQ(ks_statistic(ea, eb), ks_statistic(a, b));
  }
}

TEST(KolmogorovSmirnov, ExamplesAndReference) {
  const std::vector<double> a{1, 2, 3}, b{4, 5, 6};
  EXPECT_EQ(ks_statistic(a, b), 1.0);
  const auto x = test::normal_sample(5, 20);
  const auto same = ks_two_sample(x, x);
  EXPECT_EQ(same.statistic, 0.0);
  EXPECT_EQ(*same.classical_p, 1.0);

  std::vector<double> c;
  for (int i = 0; i < 25; ++i) c.push_back(std::exp(std::sin(i * 1.7) * 0.8) + 0.05 * i);
  const std::vector<double> d{2.1, 3.4, 1.9, 5.6, 4.4, 3.3, 2.8, 6.1, 4.0, 3.9, 2.2,
                              5.0, 4.7, 3.1, 2.6, 7.9, 3.0, 2.4, 4.1, 3.6, 5.2, 2.9};
  const auto r = ks_two_sample(d, c);
  EXPECT_NEAR(r.statistic, 0.6872727272727273, 1e-15);
  // scipy kstwobign.sf(sqrt(550 / 47) * D). ks_2samp(method="asymp") gives 3.62e-06 instead:
  // it uses the finite-n kstwo law at round(n_e).
  EXPECT_NEAR(*r.classical_p, 3.162041025449048e-05, 1e-12);
}

TEST(KolmogorovSmirnov, TriangleInequality) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto a = test::normal_sample(s, 10), b = test::normal_sample(s + 1000, 13, 0.4),
               c = test::normal_sample(s + 2000, 9, -0.2);
    EXPECT_LE(ks_statistic(a, c), ks_statistic(a, b) + ks_statistic(b, c) + 1e-15);
  }
}

TEST(BrownForsythe, HandEvaluatedExample) {
  // Z_a = {1, 0, 1}, Z_b = {10, 0, 10}: group means 2/3 and 20/3, grand mean 11/3.
  const std::vector<double> a{1, 2, 3}, b{10, 20, 30};
  const double between = 3 * std::pow(2.0 / 3 - 11.0 / 3, 2) + 3 * std::pow(20.0 / 3 - 11.0 / 3, 2);
  const double within = 2 * std::pow(1 - 2.0 / 3, 2) + std::pow(2.0 / 3, 2) + 2 * std::pow(10 - 20.0 / 3, 2) +
                        std::pow(20.0 / 3, 2);
  const double f = between / (within / 4.0);
  const auto r = brown_forsythe(a, b);
  EXPECT_NEAR(r.statistic, f, 1e-12);
  EXPECT_NEAR(r.statistic, 3.207920792079208, 1e-12);  // scipy levene(center="median")
  EXPECT_NEAR(*r.classical_p, 0.1477669257618933, 1e-10);
}

TEST(BrownForsythe, IdenticalGroupsAndErrors) {
  const auto x = test::normal_sample(9, 25);
  EXPECT_EQ(brown_forsythe(x, x).statistic, 0.0);
  EXPECT_THROW(brown_forsythe(std::vector<double>{1, 2}, x), Error);
  try {
    brown_forsythe(std::vector<double>{4, 4, 4}, std::vector<double>{7, 7, 7});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateDeviations);
  }
}

TEST(WithBootstrap, AttachesSummaryAndKeepsStatistic) {
  const auto a = test::normal_sample(1, 40), b = test::normal_sample(2, 40, 2.0);
  const auto o = with_bootstrap(ks_two_sample(a, b), a, b, BootstrapPlan{.iterations = 1000, .base_seed = 3});
  ASSERT_TRUE(o.bootstrap);
  EXPECT_EQ(o.bootstrap->observed_statistic, o.statistic);
  EXPECT_GE(*o.bootstrap->rejection_ratio, 0.99);
  const auto m = with_bootstrap(mann_whitney_u(a, b), a, b, BootstrapPlan{.iterations = 500, .base_seed = 3});
  ASSERT_TRUE(m.u_complement);
  EXPECT_EQ(*m.u_complement + m.statistic, 1600.0);
}

}  // namespace
}  // namespace evwin
