#pragma once

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace i3 {

using Date = std::chrono::year_month_day;

namespace detail {

inline bool all_digits(std::string_view s) {
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return !s.empty();
}

}  // namespace detail

// Strict YYYY-MM-DD.
inline std::optional<Date> parse_date(std::string_view s) {
  if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
  auto y = s.substr(0, 4), m = s.substr(5, 2), d = s.substr(8, 2);
  if (!detail::all_digits(y) || !detail::all_digits(m) || !detail::all_digits(d))
    return std::nullopt;
  int yi = 0;
  unsigned mi = 0, di = 0;
  std::from_chars(y.data(), y.data() + y.size(), yi);
  std::from_chars(m.data(), m.data() + m.size(), mi);
  std::from_chars(d.data(), d.data() + d.size(), di);
  Date date{std::chrono::year{yi}, std::chrono::month{mi}, std::chrono::day{di}};
  if (!date.ok()) return std::nullopt;
  return date;
}

inline std::string format_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()),
                static_cast<unsigned>(d.month()), static_cast<unsigned>(d.day()));
  return buf;
}

// Same month/day `years` later; Feb 29 lands on Feb 28 in non-leap years.
inline Date add_years(const Date& d, int years) {
  Date shifted = d + std::chrono::years{years};
  if (!shifted.ok())
    shifted = shifted.year() / shifted.month() / std::chrono::last;
  return shifted;
}

inline int year_of(const Date& d) { return static_cast<int>(d.year()); }

// Four-digit calendar year.
inline std::optional<int> parse_year(std::string_view s) {
  if (s.size() != 4 || !detail::all_digits(s)) return std::nullopt;
  int y = 0;
  std::from_chars(s.data(), s.data() + s.size(), y);
  return y;
}

// Finite decimal number; no leading '+', no trailing garbage.
inline std::optional<double> parse_number(std::string_view s) {
  if (s.empty()) return std::nullopt;
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
    return std::nullopt;
  return v;
}

}  // namespace i3
