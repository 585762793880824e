#ifndef EVWIN_DATE_HPP_
#define EVWIN_DATE_HPP_

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace evwin {

// Calendar date without a time zone. Stored as days since 1970-01-01.
class Date {
 public:
  constexpr Date() = default;
  constexpr explicit Date(std::chrono::sys_days d) : days_(d) {}
  Date(int year, unsigned month, unsigned day);

  // Strict YYYY-MM-DD; returns nullopt for anything else (including 2025-02-30).
  static std::optional<Date> parse(std::string_view text);

  std::chrono::sys_days sys_days() const { return days_; }
  std::chrono::year_month_day ymd() const { return std::chrono::year_month_day{days_}; }
  long long serial() const { return days_.time_since_epoch().count(); }

  Date plus_days(long long n) const { return Date{days_ + std::chrono::days{n}}; }

  std::string iso() const;

  friend constexpr auto operator<=>(const Date&, const Date&) = default;

 private:
  std::chrono::sys_days days_{};
};

}  // namespace evwin

#endif  // EVWIN_DATE_HPP_
