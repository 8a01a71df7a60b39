#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace hiertie {

/// Calendar date at day resolution.
class Date {
 public:
  constexpr Date() = default;
  constexpr explicit Date(std::chrono::sys_days days) : days_(days) {}
  constexpr Date(int y, unsigned m, unsigned d)
      : days_(std::chrono::year{y} / std::chrono::month{m} / std::chrono::day{d}) {}

  constexpr std::chrono::sys_days days() const { return days_; }
  constexpr long serial() const { return days_.time_since_epoch().count(); }

  constexpr Date plus_days(long n) const { return Date{days_ + std::chrono::days{n}}; }
  constexpr long days_until(Date other) const { return (other.days_ - days_).count(); }

  std::chrono::year_month_day ymd() const { return std::chrono::year_month_day{days_}; }

  /// Monday of the ISO week containing this date.
  Date week_start() const;
  Date month_start() const;
  Date year_start() const;

  /// ISO `YYYY-MM-DD`.
  std::string iso() const;

  friend constexpr auto operator<=>(const Date&, const Date&) = default;

 private:
  std::chrono::sys_days days_{};
};

/// Accepts `YYYY-MM-DD` or bare `YYYY` (widened to January 1).
std::optional<Date> parse_date(std::string_view text);

}  // namespace hiertie
