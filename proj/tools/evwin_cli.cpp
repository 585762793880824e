// Command-line front end. Exit codes: 0 success, 1 usage error, 2 data error.
#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "evwin/error.hpp"
#include "evwin/report.hpp"
#include "evwin/serialize.hpp"

namespace {

struct Flags {
  std::optional<std::string> config;
  std::optional<std::string> input;
  std::optional<std::string> event_date;
  std::optional<std::string> date_column;
  std::optional<std::string> value_column;
  std::optional<int> window_days;
  std::optional<std::size_t> iters;
  std::optional<std::uint64_t> seed;
  std::optional<double> alpha;
  std::optional<std::string> out;
  std::optional<int> threads;
};

void add_flags(CLI::App& app, Flags& f) {
  app.add_option("--config", f.config, "key = value configuration file; flags override it");
  app.add_option("--input", f.input, "CSV with date and value columns");
  app.add_option("--event-date", f.event_date, "event date, YYYY-MM-DD");
  app.add_option("--date-column", f.date_column, "date column name");
  app.add_option("--value-column", f.value_column, "value column name");
  app.add_option("--window-days", f.window_days, "calendar days kept on each side of the event");
  app.add_option("--iters", f.iters, "bootstrap iterations");
  app.add_option("--seed", f.seed, "base seed");
  app.add_option("--alpha", f.alpha, "significance level");
  app.add_option("--out", f.out, "output directory (report)");
  app.add_option("--threads", f.threads, "worker threads, 0 for the OpenMP default");
}

evwin::RunConfig build_config(const Flags& f) {
  evwin::RunConfig c;
  if (f.config) c = evwin::load_config(*f.config);
  auto set = [&](const char* key, const auto& v) {
    if (v) {
      if constexpr (std::is_same_v<std::decay_t<decltype(*v)>, std::string>) {
        evwin::apply_setting(c, key, *v);
      } else {
        evwin::apply_setting(c, key, std::to_string(*v));
      }
    }
  };
  set("input", f.input);
  set("event_date", f.event_date);
  set("date_column", f.date_column);
  set("value_column", f.value_column);
  set("window_days", f.window_days);
  set("iters", f.iters);
  set("seed", f.seed);
  set("out", f.out);
  set("threads", f.threads);
  if (f.alpha) c.alpha = *f.alpha;
  return c;
}

// Missing required settings are usage errors, not data errors.
std::optional<std::string> usage_problem(const evwin::RunConfig& c) {
  if (c.input_path.empty()) return "--input is required";
  if (!c.event_date) return "--event-date is required";
  return std::nullopt;
}

evwin::Json describe(const evwin::RunConfig& c) {
  const auto seg = evwin::prepare_segments(c);
  evwin::Json j;
  j["pre"] = evwin::to_json(evwin::describe_segment(seg.pre, c).summary);
  j["post"] = evwin::to_json(evwin::describe_segment(seg.post, c).summary);
  j["full"] = evwin::to_json(evwin::describe_segment(seg.full, c).summary);
  return j;
}

evwin::Json normality(const evwin::RunConfig& c) {
  const auto seg = evwin::prepare_segments(c);
  evwin::Json j;
  j["pre"] = evwin::to_json(evwin::battery(seg.pre.observed_values()));
  j["post"] = evwin::to_json(evwin::battery(seg.post.observed_values()));
  j["full"] = evwin::to_json(evwin::battery(seg.full.observed_values()));
  return j;
}

evwin::Json compare(const evwin::RunConfig& c) {
  const auto seg = evwin::prepare_segments(c);
  evwin::Json j = evwin::Json::array();
  for (const auto& t : evwin::compare_segments(seg.pre.observed_values(), seg.post.observed_values(), c)) {
    j.push_back(evwin::to_json(t));
  }
  return j;
}

evwin::Json anomaly(const evwin::RunConfig& c) {
  const auto seg = evwin::prepare_segments(c);
  evwin::AnomalyParams p;
  p.forest.trees = c.trees;
  p.forest.subsample = c.subsample;
  p.forest.contamination = c.contamination;
  p.forest.seed = c.seed;
  p.svm.nu = c.nu;
  p.weights = c.weights;
  return evwin::to_json(evwin::detect_anomalies(seg.post, seg.full, p));
}

evwin::Json volatility(const evwin::RunConfig& c) {
  const auto seg = evwin::prepare_segments(c);
  return evwin::to_json(evwin::compare_volatility(seg, c));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Event-window analysis of a daily series"};
  app.require_subcommand(1);
  Flags flags;
  const std::array<const char*, 6> names{"describe", "normality", "compare", "anomaly", "volatility", "report"};
  const std::array<const char*, 6> help{
      "descriptive statistics per segment",   "normality battery per segment",
      "bootstrap two-sample tests",           "anomaly ensemble on the post segment",
      "variance ratio of log returns",        "full pipeline, writes all outputs to --out"};
  for (std::size_t i = 0; i < names.size(); ++i) add_flags(*app.add_subcommand(names[i], help[i]), flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help();
    return 1;
  }

  const CLI::App* sub = app.get_subcommands().front();
  evwin::RunConfig config;
  try {
    config = build_config(flags);
    if (auto problem = usage_problem(config)) {
      std::cerr << *problem << "\n\n" << sub->help();
      return 1;
    }
    config.validate();
  } catch (const evwin::Error& e) {
    if (e.kind() == evwin::ErrorKind::InvalidArgument) {
      std::cerr << e.what() << "\n\n" << sub->help();
      return 1;
    }
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    evwin::kernels::set_thread_count(config.threads);
    const std::string name = sub->get_name();
    if (name == "report") {
      const auto report = evwin::run_full(config);
      evwin::write_outputs(report, config.output_dir);
      std::cout << "wrote " << config.output_dir.string() << " (headline "
                << evwin::format_double(report.headline_percent_change) << "%, "
                << report.anomalies.anomaly_count << " anomalies)\n";
      return 0;
    }
    evwin::Json j;
    if (name == "describe") j = describe(config);
    else if (name == "normality") j = normality(config);
    else if (name == "compare") j = compare(config);
    else if (name == "anomaly") j = anomaly(config);
    else j = volatility(config);
    std::cout << j.dump(2) << '\n';
    return 0;
  } catch (const evwin::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
