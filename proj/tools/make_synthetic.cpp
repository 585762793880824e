// Writes a synthetic daily FX-like series (weekdays only) with a level shift at
// the event date and a few planted spikes. For demos and smoke tests only; the
// numbers are not market data.
#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <iostream>
#include <numbers>

#include "evwin/rng.hpp"
#include "evwin/series.hpp"

namespace {

double standard_normal(evwin::SplitMix64& rng) {
  // Box-Muller; keeps the output identical across standard libraries.
  const double u1 = 1.0 - rng.uniform();
  const double u2 = rng.uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate a synthetic event-window series"};
  std::string out = "data/synthetic_fx.csv";
  std::uint64_t seed = 7;
  std::string first = "2024-10-14", last = "2025-04-29", event = "2025-01-20";
  double pre_level = 15900.0, post_level = 16450.0, sigma = 60.0, reversion = 0.1;
  app.add_option("--out", out, "output CSV");
  app.add_option("--seed", seed, "generator seed");
  app.add_option("--first", first, "first date");
  app.add_option("--last", last, "last date");
  app.add_option("--event", event, "date of the level shift");
  app.add_option("--pre-level", pre_level, "mean level before the event");
  app.add_option("--post-level", post_level, "mean level after the event");
  app.add_option("--sigma", sigma, "daily shock standard deviation");
  CLI11_PARSE(app, argc, argv);

  const auto d0 = evwin::Date::parse(first), d1 = evwin::Date::parse(last), ev = evwin::Date::parse(event);
  if (!d0 || !d1 || !ev || !(*d0 < *ev && *ev <= *d1)) {
    std::cerr << "dates must be YYYY-MM-DD with first < event <= last\n";
    return 1;
  }

  evwin::SplitMix64 rng(seed);
  std::vector<evwin::Date> dates;
  std::vector<double> values;
  double x = pre_level;
  for (evwin::Date d = *d0; d <= *d1; d = d.plus_days(1)) {
    const std::chrono::weekday wd{d.sys_days()};
    if (wd == std::chrono::Saturday || wd == std::chrono::Sunday) continue;
    const double target = d < *ev ? pre_level : post_level;
    x += reversion * (target - x) + sigma * standard_normal(rng);
    double v = x;
    // Occasional isolated spikes for the anomaly detectors to find.
    if (d >= *ev && rng.uniform() < 0.04) v += 12.0 * sigma;
    dates.push_back(d);
    values.push_back(std::round(v * 10.0) / 10.0);
  }

  try {
    evwin::save_csv(evwin::ObservationSeries(dates, values), out);
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return 2;
  }
  std::cout << "wrote " << dates.size() << " rows to " << out << '\n';
  return 0;
}
