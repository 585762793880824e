#include "evwin/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "evwin/error.hpp"

namespace evwin {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
  T v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(ErrorKind::InvalidArgument, "bad value for '" + key + "': '" + text + "'");
  }
  return v;
}

template <class T>
std::vector<T> parse_list(const std::string& key, const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_number<T>(key, trim(item)));
  return out;
}

}  // namespace

void RunConfig::validate() const {
  if (window_days < 10) throw Error(ErrorKind::InvalidArgument, "window_days must be >= 10");
  if (!(alpha > 0.0 && alpha < 0.5)) throw Error(ErrorKind::InvalidArgument, "alpha must be in (0, 0.5)");
  if (std::abs(weights[0] + weights[1] + weights[2] - 1.0) > 1e-9) {
    throw Error(ErrorKind::InvalidArgument, "ensemble weights must sum to 1");
  }
  if (bootstrap_iterations < 1) throw Error(ErrorKind::InvalidArgument, "iterations must be >= 1");
  if (volatility_windows.empty()) throw Error(ErrorKind::InvalidArgument, "need at least one volatility window");
  for (int w : volatility_windows)
    if (w < 2) throw Error(ErrorKind::InvalidArgument, "volatility windows must be >= 2");
}

std::map<std::string, std::string> read_key_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::FileNotFound, path.string());
  std::map<std::string, std::string> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::InvalidArgument, path.string() + ":" + std::to_string(line_no) + ": expected key = value");
    }
    out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
  if (key == "input") c.input_path = value;
  else if (key == "date_column") c.date_column = value;
  else if (key == "value_column") c.value_column = value;
  else if (key == "event_date") {
    auto d = Date::parse(value);
    if (!d) throw Error(ErrorKind::InvalidArgument, "event_date must be YYYY-MM-DD, got '" + value + "'");
    c.event_date = *d;
  }
  else if (key == "window_days") c.window_days = parse_number<int>(key, value);
  else if (key == "iters") c.bootstrap_iterations = parse_number<std::size_t>(key, value);
  else if (key == "seed") c.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "alpha") c.alpha = parse_number<double>(key, value);
  else if (key == "out") c.output_dir = value;
  else if (key == "trees") c.trees = parse_number<std::size_t>(key, value);
  else if (key == "subsample") c.subsample = parse_number<std::size_t>(key, value);
  else if (key == "contamination") c.contamination = parse_number<double>(key, value);
  else if (key == "nu") c.nu = parse_number<double>(key, value);
  else if (key == "weights") {
    const auto w = parse_list<double>(key, value);
    if (w.size() != 3) throw Error(ErrorKind::InvalidArgument, "weights needs three values");
    c.weights = {w[0], w[1], w[2]};
  }
  else if (key == "volatility_windows") c.volatility_windows = parse_list<int>(key, value);
  else if (key == "z_threshold") c.z_threshold = parse_number<double>(key, value);
  else if (key == "kde_grid_points") c.kde_grid_points = parse_number<int>(key, value);
  else if (key == "threads") c.threads = parse_number<int>(key, value);
  else throw Error(ErrorKind::InvalidArgument, "unknown configuration key '" + key + "'");
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  for (const auto& [k, v] : read_key_values(path)) apply_setting(base, k, v);
  return base;
}

}  // namespace evwin
