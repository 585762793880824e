#include "evwin/report.hpp"

#include <algorithm>
#include <fstream>

#include "evwin/error.hpp"
#include "evwin/serialize.hpp"

namespace evwin {
namespace {

template <class F>
auto stage(const char* name, F&& body) {
  try {
    return body();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(name) + ": " + e.message());
  }
}

BootstrapPlan plan_for(const RunConfig& config) {
  BootstrapPlan plan;
  plan.iterations = config.bootstrap_iterations;
  plan.base_seed = config.seed;
  return plan;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  return out;
}

}  // namespace

SegmentedSeries prepare_segments(const RunConfig& config) {
  if (!config.event_date) throw Error(ErrorKind::InvalidArgument, "event date is required");
  auto series = stage("series", [&] {
    return load_csv(config.input_path, CsvOptions{config.date_column, config.value_column});
  });
  return stage("series", [&] {
    return segment(trim_window(series, *config.event_date, config.window_days), *config.event_date);
  });
}

SegmentDescription describe_segment(const ObservationSeries& series, const RunConfig& config) {
  const auto values = series.observed_values();
  SegmentDescription out;
  out.summary = summarize(values);
  try {
    out.l_moments = l_moments(values);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ZeroL2) throw;
  }
  try {
    out.density = kde(values, config.kde_grid_points);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ZeroBandwidth) throw;
  }
  try {
    const auto z = modified_z_flags(series, config.z_threshold);
    out.modified_z_flagged =
        static_cast<std::size_t>(std::count_if(z.begin(), z.end(), [](const ModifiedZ& m) { return m.flagged; }));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::ZeroMAD) throw;
  }
  return out;
}

std::vector<TwoSampleOutcome> compare_segments(std::span<const double> pre, std::span<const double> post,
                                               const RunConfig& config) {
  const auto plan = plan_for(config);
  std::vector<TwoSampleOutcome> out;
  out.push_back(with_bootstrap(ks_two_sample(pre, post), pre, post, plan, config.alpha));
  out.push_back(with_bootstrap(mann_whitney_u(pre, post), pre, post, plan, config.alpha));
  out.push_back(with_bootstrap(brown_forsythe(pre, post), pre, post, plan, config.alpha));
  out.push_back(cliffs_delta(pre, post, plan, config.alpha));
  return out;
}

VarianceComparison compare_volatility(const SegmentedSeries& segments, const RunConfig& config) {
  const auto pre = log_returns(segments.pre);
  const auto post = log_returns(segments.post);
  return variance_ratio(pre.log_returns, post.log_returns, plan_for(config), config.alpha);
}

FullReport run_full(const RunConfig& config) {
  stage("config", [&] {
    config.validate();
    return 0;
  });
  kernels::set_thread_count(config.threads);

  FullReport report;
  report.config = config;
  report.segments = prepare_segments(config);
  const auto& seg = report.segments;
  const std::array<const ObservationSeries*, 3> parts{&seg.pre, &seg.post, &seg.full};

  stage("descriptive", [&] {
    for (std::size_t s = 0; s < 3; ++s) report.descriptives[s] = describe_segment(*parts[s], config);
    return 0;
  });
  stage("normality", [&] {
    for (std::size_t s = 0; s < 3; ++s) report.normality[s] = battery(parts[s]->observed_values());
    return 0;
  });
  const auto pre = seg.pre.observed_values();
  const auto post = seg.post.observed_values();
  report.tests = stage("nptests", [&] { return compare_segments(pre, post, config); });

  report.anomalies = stage("anomaly", [&] {
    AnomalyParams params;
    params.forest.trees = config.trees;
    params.forest.subsample = config.subsample;
    params.forest.contamination = config.contamination;
    params.forest.seed = config.seed;
    params.svm.nu = config.nu;
    params.weights = config.weights;
    return detect_anomalies(seg.post, seg.full, params);
  });

  stage("volatility", [&] {
    report.variance = compare_volatility(seg, config);
    const auto returns = log_returns(seg.full);
    for (int w : config.volatility_windows) report.rolling.push_back(rolling_variance(returns, w));
    return 0;
  });

  const double mean_pre = report.descriptives[0].summary.mean;
  const double mean_post = report.descriptives[1].summary.mean;
  report.headline_percent_change = 100.0 * (mean_post - mean_pre) / mean_pre;
  return report;
}

void write_outputs(const FullReport& report, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir / "plotdata", ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create " + (dir / "plotdata").string() + ": " + ec.message());

  open_out(dir / "report.json") << to_json(report).dump(2) << '\n';

  {
    auto out = open_out(dir / "table1.csv");
    const auto& d = report.descriptives;
    auto row = [&](const char* name, auto get) {
      out << name;
      for (const auto& s : d) out << ',' << get(s);
      out << '\n';
    };
    auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string{}; };
    out << "metric,pre,post,full\n";
    row("Count", [](const SegmentDescription& s) { return std::to_string(s.summary.count); });
    row("Mean", [](const SegmentDescription& s) { return format_double(s.summary.mean); });
    row("Median", [](const SegmentDescription& s) { return format_double(s.summary.median); });
    row("Standard Deviation", [](const SegmentDescription& s) { return format_double(s.summary.std_dev); });
    row("MAD", [](const SegmentDescription& s) { return format_double(s.summary.mad); });
    row("IQR", [](const SegmentDescription& s) { return format_double(s.summary.iqr); });
    row("Minimum", [](const SegmentDescription& s) { return format_double(s.summary.min); });
    row("Maximum", [](const SegmentDescription& s) { return format_double(s.summary.max); });
    row("Skewness", [&](const SegmentDescription& s) { return opt(s.summary.skewness); });
    row("Kurtosis", [&](const SegmentDescription& s) { return opt(s.summary.excess_kurtosis); });
    row("Trimmed Mean 10%", [](const SegmentDescription& s) { return format_double(s.summary.trimmed_mean_10); });
    row("Trimmed Mean 20%", [](const SegmentDescription& s) { return format_double(s.summary.trimmed_mean_20); });
    row("L-Skewness", [](const SegmentDescription& s) {
      return s.l_moments ? format_double(s.l_moments->tau3) : std::string{};
    });
    row("L-Kurtosis", [](const SegmentDescription& s) {
      return s.l_moments ? format_double(s.l_moments->tau4) : std::string{};
    });
  }

  {
    auto out = open_out(dir / "table2.csv");
    out << table2_header() << '\n';
    for (const auto& t : report.tests) out << table2_row(t) << '\n';
  }

  {
    auto out = open_out(dir / "anomalies.csv");
    out << "date,level,log_return,vote_isolation_forest,vote_one_class_svm,vote_statistical,"
           "score_isolation_forest,score_one_class_svm,score_statistical,ensemble_score,is_anomaly\n";
    const auto& a = report.anomalies;
    for (std::size_t i = 0; i < a.verdicts.size(); ++i) {
      const auto& v = a.verdicts[i];
      out << v.date.iso() << ',' << format_double(a.levels[i]) << ',' << format_double(a.returns[i]);
      for (int vote : v.votes) out << ',' << vote;
      for (double s : v.normalized_scores) out << ',' << format_double(s);
      out << ',' << format_double(v.ensemble_score) << ',' << (v.is_anomaly ? 1 : 0) << '\n';
    }
  }

  {
    auto out = open_out(dir / "plotdata" / "timeseries.csv");
    out << "date,level,segment\n";
    const auto& full = report.segments.full;
    for (std::size_t i = 0; i < full.size(); ++i) {
      out << full.dates()[i].iso() << ',' << (full.missing()[i] ? std::string{} : format_double(full.values()[i]))
          << ',' << (full.dates()[i] < report.segments.event_date ? "pre" : "post") << '\n';
    }
  }

  {
    static constexpr std::array<const char*, 3> kNames{"pre", "post", "full"};
    auto out = open_out(dir / "plotdata" / "kde.csv");
    out << "segment,x,density\n";
    for (std::size_t s = 0; s < 3; ++s) {
      const auto& d = report.descriptives[s].density;
      if (!d) continue;
      for (std::size_t g = 0; g < d->grid.size(); ++g) {
        out << kNames[s] << ',' << format_double(d->grid[g]) << ',' << format_double(d->density[g]) << '\n';
      }
    }
  }

  {
    auto out = open_out(dir / "plotdata" / "anomaly_scores.csv");
    out << "date,level,ensemble_score,flag\n";
    const auto& a = report.anomalies;
    for (std::size_t i = 0; i < a.verdicts.size(); ++i) {
      out << a.verdicts[i].date.iso() << ',' << format_double(a.levels[i]) << ','
          << format_double(a.verdicts[i].ensemble_score) << ',' << (a.verdicts[i].is_anomaly ? 1 : 0) << '\n';
    }
  }

  {
    // One column per configured window, aligned on return dates.
    auto out = open_out(dir / "plotdata" / "volatility.csv");
    out << "date";
    for (const auto& r : report.rolling) out << ",var_" << r.window;
    out << '\n';
    const auto returns = log_returns(report.segments.full);
    for (const auto& d : returns.dates) {
      out << d.iso();
      for (const auto& r : report.rolling) {
        out << ',';
        const auto it = std::lower_bound(r.dates.begin(), r.dates.end(), d);
        if (it != r.dates.end() && *it == d) out << format_double(r.variance[static_cast<std::size_t>(it - r.dates.begin())]);
      }
      out << '\n';
    }
  }
}

}  // namespace evwin
