#ifndef EVWIN_TEST_UTIL_HPP_
#define EVWIN_TEST_UTIL_HPP_

#include <cmath>
#include <numbers>
#include <vector>

#include "evwin/date.hpp"
#include "evwin/rng.hpp"
#include "evwin/series.hpp"

namespace evwin::test {

inline double normal(SplitMix64& rng) {
  const double u1 = 1.0 - rng.uniform();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

inline std::vector<double> normal_sample(std::uint64_t seed, std::size_t n, double mu = 0.0, double sd = 1.0) {
  SplitMix64 rng(seed);
  std::vector<double> out(n);
  for (auto& x : out) x = mu + sd * normal(rng);
  return out;
}

inline std::vector<double> uniform_sample(std::uint64_t seed, std::size_t n) {
  SplitMix64 rng(seed);
  std::vector<double> out(n);
  for (auto& x : out) x = rng.uniform();
  return out;
}

inline std::vector<double> exponential_sample(std::uint64_t seed, std::size_t n) {
  SplitMix64 rng(seed);
  std::vector<double> out(n);
  for (auto& x : out) x = -std::log(1.0 - rng.uniform());
  return out;
}

/// Consecutive calendar days starting at `first`, one per value.
inline ObservationSeries daily_series(Date first, const std::vector<double>& values) {
  std::vector<Date> dates;
  for (std::size_t i = 0; i < values.size(); ++i) dates.push_back(first.plus_days(static_cast<long long>(i)));
  return ObservationSeries(dates, values);
}

}  // namespace evwin::test

#endif  // EVWIN_TEST_UTIL_HPP_
