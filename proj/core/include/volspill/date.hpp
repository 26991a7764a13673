#pragma once

#include <chrono>
#include <string>
#include <string_view>

namespace volspill {

/// Calendar date. Only comparison and day offsets are needed.
using Date = std::chrono::year_month_day;

/// Parses "YYYY-MM-DD". Throws InputError on anything else.
Date parse_date(std::string_view text);

std::string format_date(const Date& d);

Date add_days(const Date& d, int days);

}  // namespace volspill
