#ifndef EVWIN_CONFIG_HPP_
#define EVWIN_CONFIG_HPP_

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "evwin/date.hpp"

namespace evwin {

/// Every tunable of the pipeline. Defaults reproduce the published setup:
/// a 100-day window either side of the event, B = 10,000, alpha = 0.05,
/// 300 trees with subsample 256 and contamination 0.05, nu = 0.05, ensemble
/// weights 0.4 / 0.4 / 0.2 and 7- and 14-day volatility windows.
struct RunConfig {
  std::filesystem::path input_path;
  std::string date_column = "date";
  std::string value_column = "value";
  std::optional<Date> event_date;
  int window_days = 100;
  std::size_t bootstrap_iterations = 10'000;
  std::uint64_t seed = 42;
  double alpha = 0.05;
  std::filesystem::path output_dir = "evwin_out";

  std::size_t trees = 300;
  std::size_t subsample = 256;
  double contamination = 0.05;
  double nu = 0.05;
  std::array<double, 3> weights{0.4, 0.4, 0.2};
  std::vector<int> volatility_windows{7, 14};

  double z_threshold = 3.5;
  int kde_grid_points = 512;
  int threads = 0;  // 0 = OpenMP default

  /// Throws Error(InvalidArgument) when an invariant is violated.
  void validate() const;
};

/// Plain `key = value` lines; `#` starts a comment. Unknown keys are rejected.
std::map<std::string, std::string> read_key_values(const std::filesystem::path& path);

/// Applies one key (as used in config files) to the config.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value);

RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

}  // namespace evwin

#endif  // EVWIN_CONFIG_HPP_
