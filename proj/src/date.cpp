#include "hiertie/date.hpp"

#include <charconv>

#include <fmt/format.h>

namespace hiertie {

namespace chr = std::chrono;

Date Date::week_start() const {
  const chr::weekday wd{days_};
  // iso_encoding: Monday = 1 .. Sunday = 7
  return plus_days(-static_cast<long>(wd.iso_encoding() - 1));
}

Date Date::month_start() const {
  const auto d = ymd();
  return Date{chr::sys_days{d.year() / d.month() / chr::day{1}}};
}

Date Date::year_start() const {
  const auto d = ymd();
  return Date{chr::sys_days{d.year() / chr::January / chr::day{1}}};
}

std::string Date::iso() const {
  const auto d = ymd();
  return fmt::format("{:04d}-{:02d}-{:02d}", static_cast<int>(d.year()),
                     static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
}

namespace {

std::optional<int> parse_digits(std::string_view s, std::size_t width) {
  if (s.size() != width) return std::nullopt;
  int value = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
  }
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

}  // namespace

std::optional<Date> parse_date(std::string_view text) {
  if (text.size() == 4) {
    auto y = parse_digits(text, 4);
    if (!y) return std::nullopt;
    return Date{*y, 1, 1};
  }
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  auto y = parse_digits(text.substr(0, 4), 4);
  auto m = parse_digits(text.substr(5, 2), 2);
  auto d = parse_digits(text.substr(8, 2), 2);
  if (!y || !m || !d) return std::nullopt;
  const chr::year_month_day ymd{chr::year{*y}, chr::month{static_cast<unsigned>(*m)},
                                chr::day{static_cast<unsigned>(*d)}};
  if (!ymd.ok()) return std::nullopt;
  return Date{chr::sys_days{ymd}};
}

}  // namespace hiertie
