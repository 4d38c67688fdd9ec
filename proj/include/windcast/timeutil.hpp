#ifndef WINDCAST_TIMEUTIL_HPP
#define WINDCAST_TIMEUTIL_HPP

#include <cstdint>
#include <string>

namespace windcast {

/// UTC-only calendar helpers. Timestamps are seconds since the Unix epoch;
/// no timezone or leap-second handling, matching hourly reanalysis data.

std::int64_t utc_timestamp(int year, int month, int day, int hour = 0, int minute = 0,
                           int second = 0);

/// "2012-01-01T00:00:00Z" -> seconds since epoch. Throws validation_error on
/// malformed input.
std::int64_t parse_iso8601_utc(const std::string& text);

/// Seconds since epoch -> "YYYY-MM-DDTHH:MM:SSZ".
std::string format_iso8601_utc(std::int64_t t);

}  // namespace windcast

#endif
