#ifndef EVWIN_SERIES_HPP_
#define EVWIN_SERIES_HPP_

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "evwin/date.hpp"

namespace evwin {

/// Date-indexed daily observations. Entries with `missing[i] == true` carry no
/// value (stored as NaN) and are excluded from every computation; they are
/// never imputed.
class ObservationSeries {
 public:
  ObservationSeries() = default;

  /// Validates the invariants: equal lengths, strictly increasing dates, and
  /// finite positive values wherever the mask is clear. Throws Error otherwise.
  ObservationSeries(std::vector<Date> dates, std::vector<double> values,
                    std::vector<bool> missing);

  /// Convenience for fully observed data.
  ObservationSeries(std::vector<Date> dates, std::vector<double> values);

  std::size_t size() const { return dates_.size(); }
  bool empty() const { return dates_.empty(); }
  const std::vector<Date>& dates() const { return dates_; }
  const std::vector<double>& values() const { return values_; }
  const std::vector<bool>& missing() const { return missing_; }

  std::size_t observed_count() const;
  /// Non-missing values in date order.
  std::vector<double> observed_values() const;
  std::vector<Date> observed_dates() const;

  /// Rows with date in [first, last] (inclusive).
  ObservationSeries slice(Date first, Date last) const;

 private:
  std::vector<Date> dates_;
  std::vector<double> values_;
  std::vector<bool> missing_;
};

struct SegmentedSeries {
  ObservationSeries pre;   // dates < event_date
  ObservationSeries post;  // dates >= event_date
  ObservationSeries full;
  Date event_date;
};

struct ReturnSeries {
  std::vector<Date> dates;  // date of the later observation of each pair
  std::vector<double> log_returns;

  std::size_t size() const { return log_returns.size(); }
};

struct ModifiedZ {
  Date date;
  double z = 0.0;
  bool flagged = false;
};

struct CsvOptions {
  std::string date_column = "date";
  std::string value_column = "value";
};

ObservationSeries load_csv(const std::filesystem::path& path, const CsvOptions& options = {});

/// Writes a two-column CSV using shortest round-trip formatting, so that
/// load_csv(save_csv(s)) reproduces every value bit-for-bit. Missing entries
/// are written as empty cells.
void save_csv(const ObservationSeries& series, const std::filesystem::path& path,
              const CsvOptions& options = {});

/// Splits at `event_date`; the event date itself belongs to `post`.
SegmentedSeries segment(const ObservationSeries& series, Date event_date);

/// Keeps only rows within `window_days` calendar days on either side of the event.
ObservationSeries trim_window(const ObservationSeries& series, Date event_date, int window_days);

/// ln(x_i / x_{i-1}) over adjacent observed pairs only; a missing entry breaks
/// the chain rather than producing a multi-day return.
ReturnSeries log_returns(const ObservationSeries& series);

std::vector<ModifiedZ> modified_z_flags(const ObservationSeries& series, double threshold = 3.5);

/// Source of observation series. Only the local-CSV implementation ships.
class DataProvider {
 public:
  virtual ~DataProvider() = default;
  virtual ObservationSeries fetch(const std::string& symbol, Date start, Date end) const = 0;
};

/// Resolves `symbol` to `<root>/<symbol>.csv`.
class CsvDataProvider : public DataProvider {
 public:
  explicit CsvDataProvider(std::filesystem::path root, CsvOptions options = {})
      : root_(std::move(root)), options_(std::move(options)) {}

  ObservationSeries fetch(const std::string& symbol, Date start, Date end) const override;

 private:
  std::filesystem::path root_;
  CsvOptions options_;
};

}  // namespace evwin

#endif  // EVWIN_SERIES_HPP_
