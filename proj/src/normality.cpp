#include "evwin/normality.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "evwin/descriptive.hpp"
#include "evwin/distributions.hpp"
#include "evwin/error.hpp"

namespace evwin {
namespace {

constexpr double kAlpha = 0.05;

std::vector<double> sorted_copy(std::span<const double> sample) {
  std::vector<double> s(sample.begin(), sample.end());
  std::sort(s.begin(), s.end());
  return s;
}

template <std::size_t N>
double poly(const std::array<double, N>& c, double x) {
  double r = 0.0;
  for (std::size_t i = N; i-- > 0;) r = r * x + c[i];
  return r;
}

// Centered sum of squares after sorting, throwing on a constant sample.
double centered_ss(const std::vector<double>& s, double m) {
  double ss = 0.0;
  for (double x : s) ss += (x - m) * (x - m);
  if (!(ss > 0.0) || s.back() - s.front() <= 0.0) throw Error(ErrorKind::ZeroVariance, "sample is constant");
  return ss;
}

std::vector<double> standardized(const std::vector<double>& s) {
  const double m = mean(s);
  const double sd = std::sqrt(centered_ss(s, m) / static_cast<double>(s.size() - 1));
  std::vector<double> z(s.size());
  std::transform(s.begin(), s.end(), z.begin(), [&](double x) { return (x - m) / sd; });
  return z;
}

}  // namespace

std::string_view to_string(NormalityTest test) {
  switch (test) {
    case NormalityTest::ShapiroWilk: return "shapiro_wilk";
    case NormalityTest::AndersonDarling: return "anderson_darling";
    case NormalityTest::JarqueBera: return "jarque_bera";
    case NormalityTest::DAgostinoPearson: return "dagostino_pearson";
    case NormalityTest::Lilliefors: return "lilliefors";
  }
  return "unknown";
}

NormalityResult shapiro_wilk(std::span<const double> sample) {
  const std::size_t n = sample.size();
  if (n < 3 || n > 5000) {
    throw Error(ErrorKind::SampleSizeOutOfRange, "Shapiro-Wilk needs 3 <= n <= 5000, got " + std::to_string(n));
  }
  const auto x = sorted_copy(sample);
  const double m = mean(x);
  const double ss = centered_ss(x, m);

  // Half-vector of coefficients for the lower order statistics (positive values;
  // the full coefficient vector is antisymmetric).
  const std::size_t half = n / 2;
  std::vector<double> a(half + 1, 0.0);  // 1-based
  const double an = static_cast<double>(n);
  if (n == 3) {
    a[1] = std::numbers::sqrt2 / 2.0;
  } else {
    static constexpr std::array<double, 6> c1{0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056};
    static constexpr std::array<double, 6> c2{0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};
    std::vector<double> mi(half + 1, 0.0);
    double summ2 = 0.0;
    for (std::size_t i = 1; i <= half; ++i) {
      mi[i] = dist::normal_quantile((static_cast<double>(i) - 0.375) / (an + 0.25));
      summ2 += mi[i] * mi[i];
    }
    summ2 *= 2.0;
    const double ssumm2 = std::sqrt(summ2);
    const double rsn = 1.0 / std::sqrt(an);
    const double a1 = poly(c1, rsn) - mi[1] / ssumm2;

    std::size_t first_free;
    double fac;
    if (n > 5) {
      first_free = 3;
      const double a2 = -mi[2] / ssumm2 + poly(c2, rsn);
      fac = std::sqrt((summ2 - 2.0 * mi[1] * mi[1] - 2.0 * mi[2] * mi[2]) / (1.0 - 2.0 * a1 * a1 - 2.0 * a2 * a2));
      a[2] = a2;
    } else {
      first_free = 2;
      fac = std::sqrt((summ2 - 2.0 * mi[1] * mi[1]) / (1.0 - 2.0 * a1 * a1));
    }
    a[1] = a1;
    for (std::size_t i = first_free; i <= half; ++i) a[i] = -mi[i] / fac;
  }

  double lin = 0.0;
  for (std::size_t i = 1; i <= half; ++i) lin += a[i] * ((x[n - i] - m) - (x[i - 1] - m));
  double w = std::min(1.0, lin * lin / ss);

  NormalityResult out;
  out.test = NormalityTest::ShapiroWilk;
  out.statistic = w;

  if (n == 3) {
    constexpr double pi6 = 6.0 / std::numbers::pi;
    constexpr double stqr = std::numbers::pi / 3.0;
    out.p_value = std::max(0.0, pi6 * (std::asin(std::sqrt(w)) - stqr));
  } else {
    static constexpr std::array<double, 2> g{-2.273, 0.459};
    static constexpr std::array<double, 4> c3{0.5440, -0.39978, 0.025054, -6.714e-4};
    static constexpr std::array<double, 4> c4{1.3822, -0.77857, 0.062767, -0.0020322};
    static constexpr std::array<double, 4> c5{-1.5861, -0.31082, -0.083751, 0.0038915};
    static constexpr std::array<double, 3> c6{-0.4803, -0.082676, 0.0030302};
    double y = std::log(1.0 - w);
    double mu, sigma;
    if (n <= 11) {
      const double gamma = poly(g, an);
      if (y >= gamma) {
        out.p_value = 1e-99;
        out.rejects_at_05 = true;
        return out;
      }
      y = -std::log(gamma - y);
      mu = poly(c3, an);
      sigma = std::exp(poly(c4, an));
    } else {
      const double ln_n = std::log(an);
      mu = poly(c5, ln_n);
      sigma = std::exp(poly(c6, ln_n));
    }
    out.p_value = dist::normal_sf((y - mu) / sigma);
  }
  out.p_value = std::clamp(out.p_value, 0.0, 1.0);
  out.rejects_at_05 = out.p_value < kAlpha;
  return out;
}

double anderson_darling_raw(std::span<const double> sample) {
  const auto x = sorted_copy(sample);
  const auto z = standardized(x);
  const std::size_t n = z.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double weight = 2.0 * static_cast<double>(i + 1) - 1.0;
    acc += weight * (std::log(dist::normal_cdf(z[i])) + std::log(dist::normal_sf(z[n - 1 - i])));
  }
  return -static_cast<double>(n) - acc / static_cast<double>(n);
}

NormalityResult anderson_darling(std::span<const double> sample) {
  const std::size_t n = sample.size();
  if (n < 8) throw Error(ErrorKind::InsufficientData, "Anderson-Darling needs n >= 8");
  const double a2 = anderson_darling_raw(sample);
  const double nn = static_cast<double>(n);
  const double adj = a2 * (1.0 + 0.75 / nn + 2.25 / (nn * nn));

  double p;
  if (adj >= 0.6) {
    p = std::exp(1.2937 - 5.709 * adj + 0.0186 * adj * adj);
  } else if (adj > 0.34) {
    p = std::exp(0.9177 - 4.279 * adj - 1.38 * adj * adj);
  } else if (adj > 0.2) {
    p = 1.0 - std::exp(-8.318 + 42.796 * adj - 59.938 * adj * adj);
  } else {
    p = 1.0 - std::exp(-13.436 + 101.14 * adj - 223.73 * adj * adj);
  }

  NormalityResult out;
  out.test = NormalityTest::AndersonDarling;
  out.statistic = adj;
  out.p_value = std::clamp(p, 0.0, 1.0);
  out.critical_value_05 = 0.787;
  out.rejects_at_05 = adj > 0.787;
  return out;
}

NormalityResult jarque_bera(std::span<const double> sample) {
  const std::size_t n = sample.size();
  if (n < 8) throw Error(ErrorKind::InsufficientData, "Jarque-Bera needs n >= 8");
  const auto x = sorted_copy(sample);
  const auto mom = shape_moments(x);
  if (!mom) throw Error(ErrorKind::ZeroVariance, "sample is constant");
  NormalityResult out;
  out.test = NormalityTest::JarqueBera;
  out.statistic = static_cast<double>(n) / 6.0 *
                  (mom->skewness * mom->skewness + mom->excess_kurtosis * mom->excess_kurtosis / 4.0);
  out.p_value = dist::chi2_2_sf(out.statistic);
  out.rejects_at_05 = out.p_value < kAlpha;
  return out;
}

DAgostinoParts dagostino_components(std::span<const double> sample) {
  const std::size_t count = sample.size();
  if (count < 20) throw Error(ErrorKind::InsufficientData, "D'Agostino-Pearson needs n >= 20");
  const auto x = sorted_copy(sample);
  const auto mom = shape_moments(x);
  if (!mom) throw Error(ErrorKind::ZeroVariance, "sample is constant");
  const double n = static_cast<double>(count);

  DAgostinoParts out;
  {
    const double y = mom->skewness * std::sqrt((n + 1.0) * (n + 3.0) / (6.0 * (n - 2.0)));
    const double beta2 = 3.0 * (n * n + 27.0 * n - 70.0) * (n + 1.0) * (n + 3.0) /
                         ((n - 2.0) * (n + 5.0) * (n + 7.0) * (n + 9.0));
    const double w2 = -1.0 + std::sqrt(2.0 * (beta2 - 1.0));
    const double delta = 1.0 / std::sqrt(0.5 * std::log(w2));
    const double alpha = std::sqrt(2.0 / (w2 - 1.0));
    out.z_skew = delta * std::asinh(y / alpha);
  }
  {
    const double b2 = mom->excess_kurtosis + 3.0;
    const double expected = 3.0 * (n - 1.0) / (n + 1.0);
    const double var_b2 = 24.0 * n * (n - 2.0) * (n - 3.0) / ((n + 1.0) * (n + 1.0) * (n + 3.0) * (n + 5.0));
    const double xk = (b2 - expected) / std::sqrt(var_b2);
    const double sqrt_beta1 = 6.0 * (n * n - 5.0 * n + 2.0) / ((n + 7.0) * (n + 9.0)) *
                              std::sqrt(6.0 * (n + 3.0) * (n + 5.0) / (n * (n - 2.0) * (n - 3.0)));
    const double a = 6.0 + 8.0 / sqrt_beta1 * (2.0 / sqrt_beta1 + std::sqrt(1.0 + 4.0 / (sqrt_beta1 * sqrt_beta1)));
    const double term1 = 1.0 - 2.0 / (9.0 * a);
    const double denom = 1.0 + xk * std::sqrt(2.0 / (a - 4.0));
    const double term2 = std::copysign(std::cbrt((1.0 - 2.0 / a) / std::abs(denom)), denom);
    out.z_kurt = (term1 - term2) / std::sqrt(2.0 / (9.0 * a));
  }
  return out;
}

NormalityResult dagostino_pearson(std::span<const double> sample) {
  const auto parts = dagostino_components(sample);
  NormalityResult out;
  out.test = NormalityTest::DAgostinoPearson;
  out.statistic = parts.z_skew * parts.z_skew + parts.z_kurt * parts.z_kurt;
  out.p_value = dist::chi2_2_sf(out.statistic);
  out.rejects_at_05 = out.p_value < kAlpha;
  return out;
}

double lilliefors_p_value(double d, std::size_t n) {
  double dn = d;
  double nn = static_cast<double>(n);
  if (n > 100) {
    dn *= std::pow(nn / 100.0, 0.49);
    nn = 100.0;
  }
  const double p = std::exp(-7.01256 * dn * dn * (nn + 2.78019) + 2.99587 * dn * std::sqrt(nn + 2.78019) -
                            0.122119 + 0.974598 / std::sqrt(nn) + 1.67997 / nn);
  return std::clamp(p, 0.0, 1.0);
}

NormalityResult lilliefors(std::span<const double> sample) {
  const std::size_t n = sample.size();
  if (n < 5) throw Error(ErrorKind::InsufficientData, "Lilliefors needs n >= 5");
  const auto z = standardized(sorted_copy(sample));
  const double nn = static_cast<double>(n);
  double d_plus = 0.0, d_minus = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = dist::normal_cdf(z[i]);
    d_plus = std::max(d_plus, static_cast<double>(i + 1) / nn - f);
    d_minus = std::max(d_minus, f - static_cast<double>(i) / nn);
  }
  NormalityResult out;
  out.test = NormalityTest::Lilliefors;
  out.statistic = std::max(d_plus, d_minus);
  out.p_value = lilliefors_p_value(out.statistic, n);
  out.rejects_at_05 = out.p_value < kAlpha;
  return out;
}

bool battery_rule(std::span<const bool, 5> rejects) {
  return std::count(rejects.begin(), rejects.end(), true) >= 3;
}

BatteryVerdict battery(std::span<const double> sample) {
  if (sample.size() < 20) throw Error(ErrorKind::InsufficientData, "normality battery needs n >= 20");
  BatteryVerdict out;
  out.results = {shapiro_wilk(sample), anderson_darling(sample), jarque_bera(sample), dagostino_pearson(sample),
                 lilliefors(sample)};
  std::array<bool, 5> rejects{};
  for (std::size_t i = 0; i < 5; ++i) rejects[i] = out.results[i].rejects_at_05;
  out.rejections = static_cast<int>(std::count(rejects.begin(), rejects.end(), true));
  out.non_normal = battery_rule(rejects);
  return out;
}

}  // namespace evwin
