#include "evwin/series.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "evwin/descriptive.hpp"
#include "evwin/error.hpp"

namespace evwin {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '"' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_row(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      cells.push_back(trim(line.substr(start, i - start)));
      start = i + 1;
    }
  }
  return cells;
}

std::optional<double> parse_value(std::string_view cell) {
  if (cell.empty()) return std::nullopt;
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc{} || ptr != cell.data() + cell.size()) return std::nullopt;
  if (!std::isfinite(v) || v <= 0.0) return std::nullopt;
  return v;
}

std::string line_error(std::size_t line, const std::string& what) {
  return "line " + std::to_string(line) + ": " + what;
}

}  // namespace

ObservationSeries::ObservationSeries(std::vector<Date> dates, std::vector<double> values,
                                     std::vector<bool> missing)
    : dates_(std::move(dates)), values_(std::move(values)), missing_(std::move(missing)) {
  if (dates_.size() != values_.size() || dates_.size() != missing_.size()) {
    throw Error(ErrorKind::InvalidArgument, "dates, values and mask differ in length");
  }
  for (std::size_t i = 1; i < dates_.size(); ++i) {
    if (dates_[i] == dates_[i - 1]) throw Error(ErrorKind::DuplicateDate, dates_[i].iso());
    if (dates_[i] < dates_[i - 1]) {
      throw Error(ErrorKind::InvalidArgument, "dates not increasing at " + dates_[i].iso());
    }
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (missing_[i]) {
      values_[i] = std::numeric_limits<double>::quiet_NaN();
    } else if (!std::isfinite(values_[i]) || values_[i] <= 0.0) {
      throw Error(ErrorKind::InvalidArgument, "non-positive or non-finite value at " + dates_[i].iso());
    }
  }
}

ObservationSeries::ObservationSeries(std::vector<Date> dates, std::vector<double> values)
    : ObservationSeries(dates, values, std::vector<bool>(dates.size(), false)) {}

std::size_t ObservationSeries::observed_count() const {
  return static_cast<std::size_t>(std::count(missing_.begin(), missing_.end(), false));
}

std::vector<double> ObservationSeries::observed_values() const {
  std::vector<double> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i)
    if (!missing_[i]) out.push_back(values_[i]);
  return out;
}

std::vector<Date> ObservationSeries::observed_dates() const {
  std::vector<Date> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i)
    if (!missing_[i]) out.push_back(dates_[i]);
  return out;
}

ObservationSeries ObservationSeries::slice(Date first, Date last) const {
  std::vector<Date> d;
  std::vector<double> v;
  std::vector<bool> m;
  for (std::size_t i = 0; i < size(); ++i) {
    if (dates_[i] < first || last < dates_[i]) continue;
    d.push_back(dates_[i]);
    v.push_back(values_[i]);
    m.push_back(missing_[i]);
  }
  return ObservationSeries(std::move(d), std::move(v), std::move(m));
}

ObservationSeries load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::FileNotFound, path.string());

  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw Error(ErrorKind::MalformedRow, line_error(1, "empty file"));
  ++line_no;
  if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF) line.erase(0, 3);  // BOM

  const auto header = split_row(line);
  auto column_of = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw Error(ErrorKind::MalformedRow, line_error(1, "missing column '" + name + "'"));
    }
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t date_col = column_of(options.date_column);
  const std::size_t value_col = column_of(options.value_column);

  struct Row {
    Date date;
    double value;
    bool missing;
  };
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_row(line);
    if (cells.size() != header.size()) {
      throw Error(ErrorKind::MalformedRow, line_error(line_no, "expected " + std::to_string(header.size()) +
                                                                   " cells, got " + std::to_string(cells.size())));
    }
    auto date = Date::parse(cells[date_col]);
    if (!date) {
      throw Error(ErrorKind::MalformedRow,
                  line_error(line_no, "unparseable date '" + std::string(cells[date_col]) + "'"));
    }
    auto value = parse_value(cells[value_col]);
    rows.push_back({*date, value.value_or(std::numeric_limits<double>::quiet_NaN()), !value.has_value()});
  }
  if (rows.empty()) throw Error(ErrorKind::MalformedRow, line_error(line_no, "no data rows"));

  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.date < b.date; });
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].date == rows[i - 1].date) throw Error(ErrorKind::DuplicateDate, rows[i].date.iso());
  }

  std::vector<Date> dates;
  std::vector<double> values;
  std::vector<bool> mask;
  for (const auto& r : rows) {
    dates.push_back(r.date);
    values.push_back(r.value);
    mask.push_back(r.missing);
  }
  return ObservationSeries(std::move(dates), std::move(values), std::move(mask));
}

void save_csv(const ObservationSeries& series, const std::filesystem::path& path,
              const CsvOptions& options) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << options.date_column << ',' << options.value_column << '\n';
  char buf[64];
  for (std::size_t i = 0; i < series.size(); ++i) {
    out << series.dates()[i].iso() << ',';
    if (!series.missing()[i]) {
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, series.values()[i]);
      out.write(buf, ptr - buf);
    }
    out << '\n';
  }
}

SegmentedSeries segment(const ObservationSeries& series, Date event_date) {
  if (series.empty() || event_date <= series.dates().front() || series.dates().back() < event_date) {
    throw Error(ErrorKind::EventOutsideRange,
                "event date " + event_date.iso() + " must fall after the first and on or before the last date" +
                    (series.empty() ? std::string{}
                                    : " (" + series.dates().front().iso() + " .. " + series.dates().back().iso() + ")"));
  }
  SegmentedSeries out;
  out.event_date = event_date;
  out.full = series;
  out.pre = series.slice(series.dates().front(), event_date.plus_days(-1));
  out.post = series.slice(event_date, series.dates().back());
  return out;
}

ObservationSeries trim_window(const ObservationSeries& series, Date event_date, int window_days) {
  return series.slice(event_date.plus_days(-window_days), event_date.plus_days(window_days));
}

ReturnSeries log_returns(const ObservationSeries& series) {
  if (series.observed_count() < 2) {
    throw Error(ErrorKind::InsufficientData, "log returns need at least 2 observed values");
  }
  ReturnSeries out;
  const auto& v = series.values();
  const auto& m = series.missing();
  for (std::size_t i = 1; i < series.size(); ++i) {
    if (m[i] || m[i - 1]) continue;
    out.dates.push_back(series.dates()[i]);
    out.log_returns.push_back(std::log(v[i] / v[i - 1]));
  }
  return out;
}

std::vector<ModifiedZ> modified_z_flags(const ObservationSeries& series, double threshold) {
  const auto values = series.observed_values();
  if (values.size() < 3) throw Error(ErrorKind::InsufficientData, "modified Z-scores need 3 observed values");
  const double med = median(values);
  const double scale = mad(values);
  if (!(scale > 0.0)) throw Error(ErrorKind::ZeroMAD, "median absolute deviation is zero");

  const auto dates = series.observed_dates();
  std::vector<ModifiedZ> out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double z = 0.6745 * (values[i] - med) / scale;
    out[i] = {dates[i], z, std::abs(z) > threshold};
  }
  return out;
}

ObservationSeries CsvDataProvider::fetch(const std::string& symbol, Date start, Date end) const {
  return load_csv(root_ / (symbol + ".csv"), options_).slice(start, end);
}

}  // namespace evwin
