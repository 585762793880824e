#include "evwin/nptests.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <vector>

#include "evwin/descriptive.hpp"
#include "evwin/distributions.hpp"
#include "evwin/error.hpp"

namespace evwin {
namespace {

void require_non_empty(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error(ErrorKind::EmptySample, "both samples must be non-empty");
}

std::vector<double> sorted_copy(std::span<const double> sample) {
  std::vector<double> s(sample.begin(), sample.end());
  std::sort(s.begin(), s.end());
  return s;
}

// Midranks of the pooled sample, returned in input order (a first, then b),
// together with the tie-group sizes.
std::vector<double> pooled_midranks(std::span<const double> a, std::span<const double> b,
                                    std::vector<std::size_t>* tie_sizes) {
  const std::size_t n = a.size() + b.size();
  std::vector<double> pooled(n);
  std::copy(a.begin(), a.end(), pooled.begin());
  std::copy(b.begin(), b.end(), pooled.begin() + static_cast<std::ptrdiff_t>(a.size()));
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return pooled[i] < pooled[j]; });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && pooled[order[j + 1]] == pooled[order[i]]) ++j;
    const double mid = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = mid;
    if (tie_sizes) tie_sizes->push_back(j - i + 1);
    i = j + 1;
  }
  return ranks;
}

}  // namespace

std::string_view to_string(TwoSampleTest test) {
  switch (test) {
    case TwoSampleTest::BrownForsythe: return "brown_forsythe";
    case TwoSampleTest::CliffsDelta: return "cliffs_delta";
    case TwoSampleTest::KolmogorovSmirnov: return "kolmogorov_smirnov";
    case TwoSampleTest::MannWhitneyU: return "mann_whitney_u";
  }
  return "unknown";
}

std::string_view to_string(EffectLabel label) {
  switch (label) {
    case EffectLabel::Negligible: return "negligible";
    case EffectLabel::Small: return "small";
    case EffectLabel::Medium: return "medium";
    case EffectLabel::Large: return "large";
  }
  return "unknown";
}

StatisticValue brown_forsythe_statistic(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 3 || b.size() < 3) throw Error(ErrorKind::InsufficientData, "Brown-Forsythe needs n >= 3 per group");
  auto deviations = [](std::span<const double> g) {
    const double med = median(g);
    std::vector<double> z(g.size());
    std::transform(g.begin(), g.end(), z.begin(), [med](double x) { return std::abs(x - med); });
    return z;
  };
  const auto za = deviations(a);
  const auto zb = deviations(b);
  const double sum_a = std::accumulate(za.begin(), za.end(), 0.0);
  const double sum_b = std::accumulate(zb.begin(), zb.end(), 0.0);
  const double na = static_cast<double>(za.size());
  const double nb = static_cast<double>(zb.size());
  const double total = na + nb;
  const double mean_a = sum_a / na;
  const double mean_b = sum_b / nb;
  const double grand = (sum_a + sum_b) / total;

  const double between = na * (mean_a - grand) * (mean_a - grand) + nb * (mean_b - grand) * (mean_b - grand);
  double within = 0.0;
  for (double z : za) within += (z - mean_a) * (z - mean_a);
  for (double z : zb) within += (z - mean_b) * (z - mean_b);
  if (!(within > 0.0)) {
    throw Error(ErrorKind::DegenerateDeviations, "absolute deviations are constant within every group");
  }
  const double f = (total - 2.0) * between / within;
  return {f, dist::f_sf(f, 1.0, total - 2.0)};
}

TwoSampleOutcome brown_forsythe(std::span<const double> a, std::span<const double> b) {
  const auto v = brown_forsythe_statistic(a, b);
  TwoSampleOutcome out;
  out.test = TwoSampleTest::BrownForsythe;
  out.statistic = v.statistic;
  out.classical_p = v.p_value;
  return out;
}

double cliffs_delta_value(std::span<const double> a, std::span<const double> b, Execution exec) {
  require_non_empty(a, b);
  const auto c = exec == Execution::Parallel ? kernels::dominance_counts(a, b) : kernels::dominance_counts_serial(a, b);
  return static_cast<double>(c.greater - c.less) / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

EffectLabel cliffs_effect_label(double delta) {
  const double m = std::abs(delta);
  if (m < 0.147) return EffectLabel::Negligible;
  if (m < 0.33) return EffectLabel::Small;
  if (m < 0.474) return EffectLabel::Medium;
  return EffectLabel::Large;
}

StatisticValue cliffs_delta_statistic_value(std::span<const double> a, std::span<const double> b) {
  return {cliffs_delta_value(a, b, Execution::Serial), std::nullopt};
}

TwoSampleOutcome cliffs_delta(std::span<const double> a, std::span<const double> b, const BootstrapPlan& plan,
                              double alpha) {
  TwoSampleOutcome out;
  out.test = TwoSampleTest::CliffsDelta;
  out.statistic = cliffs_delta_value(a, b);
  out.effect = cliffs_effect_label(out.statistic);
  BootstrapPlan two_sample = plan;
  two_sample.scheme = ResampleScheme::TwoSampleIndependent;
  out.bootstrap = bootstrap_test(a, b, cliffs_delta_statistic_value, two_sample, alpha);
  return out;
}

double ks_statistic(std::span<const double> a, std::span<const double> b) {
  require_non_empty(a, b);
  const auto sa = sorted_copy(a);
  const auto sb = sorted_copy(b);
  const double na = static_cast<double>(sa.size());
  const double nb = static_cast<double>(sb.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < sa.size() || j < sb.size()) {
    double v;
    if (j >= sb.size() || (i < sa.size() && sa[i] <= sb[j])) v = sa[i];
    else v = sb[j];
    while (i < sa.size() && sa[i] <= v) ++i;
    while (j < sb.size() && sb[j] <= v) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return d;
}

double ks_p_value(double d, std::size_t na, std::size_t nb) {
  const double ne = static_cast<double>(na) * static_cast<double>(nb) / static_cast<double>(na + nb);
  return dist::kolmogorov_sf(std::sqrt(ne) * d);
}

StatisticValue ks_statistic_value(std::span<const double> a, std::span<const double> b) {
  const double d = ks_statistic(a, b);
  return {d, ks_p_value(d, a.size(), b.size())};
}

TwoSampleOutcome ks_two_sample(std::span<const double> a, std::span<const double> b) {
  const auto v = ks_statistic_value(a, b);
  TwoSampleOutcome out;
  out.test = TwoSampleTest::KolmogorovSmirnov;
  out.statistic = v.statistic;
  out.classical_p = v.p_value;
  return out;
}

MannWhitney mann_whitney(std::span<const double> a, std::span<const double> b) {
  require_non_empty(a, b);
  std::vector<std::size_t> ties;
  const auto ranks = pooled_midranks(a, b, &ties);
  const std::size_t n1 = a.size();
  const std::size_t n2 = b.size();
  const std::size_t total = n1 + n2;
  const double r1 = std::accumulate(ranks.begin(), ranks.begin() + static_cast<std::ptrdiff_t>(n1), 0.0);
  const double base = static_cast<double>(n1) * static_cast<double>(n1 + 1) / 2.0;
  const double n1n2 = static_cast<double>(n1) * static_cast<double>(n2);

  MannWhitney out;
  out.u = r1 - base;
  out.u_complement = n1n2 - out.u;

  if (total <= 16) {
    // Permutation distribution of U over every assignment of n1 pooled ranks to the first group.
    out.exact = true;
    std::size_t le = 0, ge = 0, count = 0;
    const std::uint32_t limit = 1u << total;
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
      if (static_cast<std::size_t>(std::popcount(mask)) != n1) continue;
      double r = 0.0;
      for (std::size_t k = 0; k < total; ++k)
        if (mask & (1u << k)) r += ranks[k];
      const double u = r - base;
      ++count;
      le += u <= out.u;
      ge += u >= out.u;
    }
    const double tail = static_cast<double>(std::min(le, ge)) / static_cast<double>(count);
    out.p_value = std::min(1.0, 2.0 * tail);
    return out;
  }

  const double nt = static_cast<double>(total);
  double tie_term = 0.0;
  for (std::size_t t : ties) {
    const double tt = static_cast<double>(t);
    tie_term += tt * tt * tt - tt;
  }
  const double variance = n1n2 / 12.0 * ((nt + 1.0) - tie_term / (nt * (nt - 1.0)));
  if (!(variance > 0.0)) {
    out.p_value = 1.0;
    return out;
  }
  const double z = (std::abs(out.u - n1n2 / 2.0) - 0.5) / std::sqrt(variance);
  out.p_value = std::clamp(2.0 * dist::normal_sf(z), 0.0, 1.0);
  return out;
}

StatisticValue mann_whitney_statistic_value(std::span<const double> a, std::span<const double> b) {
  const auto m = mann_whitney(a, b);
  return {m.u, m.p_value};
}

TwoSampleOutcome mann_whitney_u(std::span<const double> a, std::span<const double> b) {
  const auto m = mann_whitney(a, b);
  TwoSampleOutcome out;
  out.test = TwoSampleTest::MannWhitneyU;
  out.statistic = m.u;
  out.classical_p = m.p_value;
  out.u_complement = m.u_complement;
  return out;
}

TwoSampleOutcome with_bootstrap(TwoSampleOutcome outcome, std::span<const double> a, std::span<const double> b,
                                const BootstrapPlan& plan, double alpha) {
  TwoSampleStatistic fn;
  switch (outcome.test) {
    case TwoSampleTest::BrownForsythe: fn = brown_forsythe_statistic; break;
    case TwoSampleTest::CliffsDelta: fn = cliffs_delta_statistic_value; break;
    case TwoSampleTest::KolmogorovSmirnov: fn = ks_statistic_value; break;
    case TwoSampleTest::MannWhitneyU: fn = mann_whitney_statistic_value; break;
  }
  outcome.bootstrap = bootstrap_test(a, b, fn, plan, alpha);
  return outcome;
}

}  // namespace evwin
