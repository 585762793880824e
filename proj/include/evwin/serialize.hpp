#ifndef EVWIN_SERIALIZE_HPP_
#define EVWIN_SERIALIZE_HPP_

#include <json.hpp>
#include <string>

#include "evwin/report.hpp"

namespace evwin {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

Json to_json(const DescriptiveSummary& s);
Json to_json(const LMomentSummary& l);
Json to_json(const NormalityResult& r);
Json to_json(const BatteryVerdict& v);
Json to_json(const BootstrapSummary& b);
Json to_json(const TwoSampleOutcome& o);
Json to_json(const AnomalyVerdict& v);
Json to_json(const AnomalyReport& r);
Json to_json(const VarianceComparison& v);
Json to_json(const RunConfig& c);
Json to_json(const FullReport& r);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

/// Flat one-row CSV of a DescriptiveSummary: header line and value line.
std::string descriptive_csv(const DescriptiveSummary& s);

/// Table-2 row: test, statistic, p_value, bootstrap_p, ci_low, ci_high, rejection_ratio, effect.
std::string table2_header();
std::string table2_row(const TwoSampleOutcome& o);

}  // namespace evwin

#endif  // EVWIN_SERIALIZE_HPP_
