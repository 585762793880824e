#ifndef EVWIN_NORMALITY_HPP_
#define EVWIN_NORMALITY_HPP_

#include <array>
#include <optional>
#include <span>
#include <string_view>

namespace evwin {

enum class NormalityTest { ShapiroWilk, AndersonDarling, JarqueBera, DAgostinoPearson, Lilliefors };

std::string_view to_string(NormalityTest test);

struct NormalityResult {
  NormalityTest test = NormalityTest::ShapiroWilk;
  double statistic = 0.0;
  double p_value = 1.0;
  /// Set for tests whose verdict is read off a critical value (Anderson-Darling).
  std::optional<double> critical_value_05;
  bool rejects_at_05 = false;
};

/// W with Royston's (1995, AS R94) coefficients and normalising transform. 3 <= n <= 5000.
NormalityResult shapiro_wilk(std::span<const double> sample);

/// Statistic is the small-sample adjusted A*^2 = A^2 (1 + 0.75/n + 2.25/n^2),
/// compared with the estimated-parameter critical value 0.787. The p-value is
/// the Stephens / D'Agostino piecewise approximation. n >= 8.
NormalityResult anderson_darling(std::span<const double> sample);

/// Unadjusted A^2 with mean and n-1 SD estimated from the sample.
double anderson_darling_raw(std::span<const double> sample);

NormalityResult jarque_bera(std::span<const double> sample);

struct DAgostinoParts {
  double z_skew = 0.0;
  double z_kurt = 0.0;
};

/// Transformed skewness (D'Agostino) and kurtosis (Anscombe-Glynn) z-scores.
DAgostinoParts dagostino_components(std::span<const double> sample);
NormalityResult dagostino_pearson(std::span<const double> sample);

/// Dallal-Wilkinson approximation of the Lilliefors p-value, clamped to [0, 1].
double lilliefors_p_value(double d, std::size_t n);
NormalityResult lilliefors(std::span<const double> sample);

struct BatteryVerdict {
  std::array<NormalityResult, 5> results{};
  int rejections = 0;
  bool non_normal = false;
};

/// Majority rule over the five tests: at least three rejections at 0.05.
bool battery_rule(std::span<const bool, 5> rejects);
BatteryVerdict battery(std::span<const double> sample);

}  // namespace evwin

#endif  // EVWIN_NORMALITY_HPP_
