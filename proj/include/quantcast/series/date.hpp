#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace quantcast {

/// Calendar date with no time zone; trading days only, gaps are simply absent.
using Date = std::chrono::year_month_day;

/// Parses a strict `YYYY-MM-DD` string. Returns nullopt on any deviation.
std::optional<Date> parse_date(std::string_view text);

std::string format_date(const Date& date);

/// Days since 1970-01-01.
inline long long to_epoch_days(const Date& date) {
    return std::chrono::sys_days{date}.time_since_epoch().count();
}

inline Date from_epoch_days(long long days) {
    return Date{std::chrono::sys_days{std::chrono::days{days}}};
}

}  // namespace quantcast
