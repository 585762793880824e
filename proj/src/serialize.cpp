#include "evwin/serialize.hpp"

#include <charconv>
#include <cmath>

namespace evwin {
namespace {

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

Json optional_number(const std::optional<double>& v) { return v ? number_or_null(*v) : Json(nullptr); }

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

Json to_json(const DescriptiveSummary& s) {
  return Json{{"count", s.count},
              {"mean", s.mean},
              {"median", s.median},
              {"std_dev", s.std_dev},
              {"mad", s.mad},
              {"iqr", s.iqr},
              {"q1", s.q1},
              {"q3", s.q3},
              {"min", s.min},
              {"max", s.max},
              {"trimmed_mean_10", s.trimmed_mean_10},
              {"trimmed_mean_20", s.trimmed_mean_20},
              {"skewness", optional_number(s.skewness)},
              {"excess_kurtosis", optional_number(s.excess_kurtosis)}};
}

Json to_json(const LMomentSummary& l) {
  return Json{{"l1", l.l1}, {"l2", l.l2}, {"l3", l.l3}, {"l4", l.l4}, {"tau3", l.tau3}, {"tau4", l.tau4}};
}

Json to_json(const NormalityResult& r) {
  Json j{{"test", std::string(to_string(r.test))},
         {"statistic", number_or_null(r.statistic)},
         {"p_value", number_or_null(r.p_value)},
         {"rejects", r.rejects_at_05}};
  if (r.critical_value_05) j["critical_value_05"] = *r.critical_value_05;
  return j;
}

Json to_json(const BatteryVerdict& v) {
  Json results = Json::array();
  for (const auto& r : v.results) results.push_back(to_json(r));
  return Json{{"results", results}, {"rejections", v.rejections}, {"non_normal", v.non_normal}};
}

Json to_json(const BootstrapSummary& b) {
  return Json{{"observed_statistic", number_or_null(b.observed_statistic)},
              {"empirical_p", b.empirical_p},
              {"rejection_ratio", optional_number(b.rejection_ratio)},
              {"ci_low", number_or_null(b.ci_low)},
              {"ci_high", number_or_null(b.ci_high)},
              {"alpha", b.alpha},
              {"iterations", b.iterations},
              {"seed", b.seed},
              {"degenerate_count", b.degenerate_count}};
}

Json to_json(const TwoSampleOutcome& o) {
  Json j{{"test", std::string(to_string(o.test))},
         {"statistic", number_or_null(o.statistic)},
         {"p_value", optional_number(o.classical_p)},
         {"bootstrap", o.bootstrap ? to_json(*o.bootstrap) : Json(nullptr)},
         {"effect", o.effect ? Json(std::string(to_string(*o.effect))) : Json(nullptr)}};
  if (o.u_complement) j["u_complement"] = *o.u_complement;
  return j;
}

Json to_json(const AnomalyVerdict& v) {
  Json votes, raw, norm;
  for (std::size_t m = 0; m < 3; ++m) {
    const std::string name(to_string(static_cast<Detector>(m)));
    votes[name] = v.votes[m];
    raw[name] = v.raw_scores[m];
    norm[name] = v.normalized_scores[m];
  }
  return Json{{"date", v.date.iso()},         {"votes", votes},
              {"raw_scores", raw},            {"normalized_scores", norm},
              {"weighted_score", v.weighted_score}, {"ensemble_score", v.ensemble_score},
              {"is_anomaly", v.is_anomaly}};
}

Json to_json(const AnomalyReport& r) {
  Json verdicts = Json::array();
  Json flagged = Json::array();
  for (std::size_t i = 0; i < r.verdicts.size(); ++i) {
    Json v = to_json(r.verdicts[i]);
    v["level"] = r.levels[i];
    v["log_return"] = r.returns[i];
    if (r.verdicts[i].is_anomaly) flagged.push_back(r.verdicts[i].date.iso());
    verdicts.push_back(std::move(v));
  }
  return Json{{"anomaly_count", r.anomaly_count},
              {"observed_count", r.observed_count},
              {"anomaly_fraction", r.anomaly_fraction},
              {"anomaly_dates", flagged},
              {"forest_threshold", r.forest_threshold},
              {"svm_rho", r.svm_rho},
              {"svm_gamma", r.svm_gamma},
              {"verdicts", verdicts}};
}

Json to_json(const VarianceComparison& v) {
  return Json{{"var_pre", v.var_pre},   {"var_post", v.var_post},   {"ratio_post_over_pre", v.ratio},
              {"ci_low", v.ci_low},     {"ci_high", v.ci_high},     {"alpha", v.alpha},
              {"iterations", v.iterations}, {"seed", v.seed},       {"degenerate_count", v.degenerate_count}};
}

Json to_json(const RunConfig& c) {
  return Json{{"input", c.input_path.filename().string()},
              {"date_column", c.date_column},
              {"value_column", c.value_column},
              {"event_date", c.event_date ? Json(c.event_date->iso()) : Json(nullptr)},
              {"window_days", c.window_days},
              {"iterations", c.bootstrap_iterations},
              {"seed", c.seed},
              {"alpha", c.alpha},
              {"trees", c.trees},
              {"subsample", c.subsample},
              {"contamination", c.contamination},
              {"nu", c.nu},
              {"weights", c.weights},
              {"volatility_windows", c.volatility_windows},
              {"z_threshold", c.z_threshold}};
}

Json to_json(const FullReport& r) {
  static constexpr std::array<const char*, 3> kSegments{"pre", "post", "full"};
  Json descriptives, normality;
  for (std::size_t s = 0; s < 3; ++s) {
    const auto& d = r.descriptives[s];
    Json j = to_json(d.summary);
    j["l_moments"] = d.l_moments ? to_json(*d.l_moments) : Json(nullptr);
    j["kde_bandwidth"] = d.density ? Json(d.density->bandwidth) : Json(nullptr);
    j["modified_z_flagged"] = d.modified_z_flagged;
    descriptives[kSegments[s]] = std::move(j);
    normality[kSegments[s]] = to_json(r.normality[s]);
  }
  Json tests = Json::array();
  for (const auto& t : r.tests) tests.push_back(to_json(t));
  Json rolling = Json::array();
  for (const auto& rv : r.rolling) {
    double mean_var = 0.0;
    for (double v : rv.variance) mean_var += v;
    mean_var /= static_cast<double>(rv.variance.size());
    rolling.push_back(Json{{"window", rv.window}, {"points", rv.variance.size()}, {"mean_variance", mean_var}});
  }
  return Json{{"schema_version", kReportSchemaVersion},
              {"config", to_json(r.config)},
              {"event_date", r.segments.event_date.iso()},
              {"segments",
               Json{{"pre", Json{{"first", r.segments.pre.dates().front().iso()},
                                 {"last", r.segments.pre.dates().back().iso()},
                                 {"count", r.segments.pre.observed_count()}}},
                    {"post", Json{{"first", r.segments.post.dates().front().iso()},
                                  {"last", r.segments.post.dates().back().iso()},
                                  {"count", r.segments.post.observed_count()}}},
                    {"full", Json{{"count", r.segments.full.observed_count()}}}}},
              {"headline", Json{{"percent_change_mean", r.headline_percent_change}}},
              {"descriptives", descriptives},
              {"normality", normality},
              {"tests", tests},
              {"anomalies", to_json(r.anomalies)},
              {"volatility", Json{{"variance_ratio", to_json(r.variance)}, {"rolling", rolling}}}};
}

std::string descriptive_csv(const DescriptiveSummary& s) {
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string{}; };
  return "count,mean,median,std_dev,mad,iqr,min,max,trimmed_mean_10,trimmed_mean_20,skewness,excess_kurtosis\n" +
         std::to_string(s.count) + ',' + format_double(s.mean) + ',' + format_double(s.median) + ',' +
         format_double(s.std_dev) + ',' + format_double(s.mad) + ',' + format_double(s.iqr) + ',' +
         format_double(s.min) + ',' + format_double(s.max) + ',' + format_double(s.trimmed_mean_10) + ',' +
         format_double(s.trimmed_mean_20) + ',' + opt(s.skewness) + ',' + opt(s.excess_kurtosis) + '\n';
}

std::string table2_header() { return "test,statistic,p_value,bootstrap_p,ci_low,ci_high,rejection_ratio,effect"; }

std::string table2_row(const TwoSampleOutcome& o) {
  auto opt = [](const std::optional<double>& v) { return v ? format_double(*v) : std::string{}; };
  std::string row = std::string(to_string(o.test)) + ',' + format_double(o.statistic) + ',' + opt(o.classical_p) + ',';
  if (o.bootstrap) {
    // Cliff's delta has no classical p, so its bootstrap p is not reported either.
    row += (o.classical_p ? format_double(o.bootstrap->empirical_p) : std::string{}) + ',' +
           format_double(o.bootstrap->ci_low) + ',' + format_double(o.bootstrap->ci_high) + ',' +
           opt(o.bootstrap->rejection_ratio) + ',';
  } else {
    row += ",,,,";
  }
  row += o.effect ? std::string(to_string(*o.effect)) : std::string{};
  return row;
}

}  // namespace evwin
