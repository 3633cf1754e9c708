#pragma once

#include <cstdint>
#include <cstdio>
#include <string>

#include "arcane/error.hpp"

// Civil-calendar arithmetic on plain integers: dates are days since the Unix
// epoch, instants are seconds since the Unix epoch, both UTC. The day<->civil
// conversions are Howard Hinnant's algorithms, valid far beyond the simulated
// window.

namespace arcane::timeutil {

constexpr std::int64_t kSecondsPerDay = 86400;

constexpr std::int64_t days_from_civil(int y, int m, int d) {
  y -= m <= 2;
  const int era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);              // [0, 399]
  const unsigned doy = (153u * static_cast<unsigned>(m + (m > 2 ? -3 : 9)) + 2u) / 5u +
                       static_cast<unsigned>(d) - 1u;                     // [0, 365]
  const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;          // [0, 146096]
  return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

struct CivilDate {
  int year;
  int month;
  int day;
};

constexpr CivilDate civil_from_days(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);           // [0, 146096]
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);           // [0, 365]
  const unsigned mp = (5 * doy + 2) / 153;                                // [0, 11]
  const unsigned d = doy - (153 * mp + 2) / 5 + 1;                        // [1, 31]
  const unsigned m = mp < 10 ? mp + 3 : mp - 9;                           // [1, 12]
  return CivilDate{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
}

constexpr bool is_leap(int y) { return y % 4 == 0 && (y % 100 != 0 || y % 400 == 0); }

constexpr int days_in_month(int y, int m) {
  constexpr int lengths[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (m == 2 && is_leap(y)) return 29;
  return lengths[m - 1];
}

// "YYYY-MM-DD" -> days since epoch.
inline std::int64_t parse_date(const std::string& s) {
  int y = 0, m = 0, d = 0;
  char tail = 0;
  if (std::sscanf(s.c_str(), "%4d-%2d-%2d%c", &y, &m, &d, &tail) != 3)
    throw ValidationError("date: expected YYYY-MM-DD, got '" + s + "'");
  if (m < 1 || m > 12 || d < 1 || d > days_in_month(y, m))
    throw ValidationError("date: out-of-range component in '" + s + "'");
  return days_from_civil(y, m, d);
}

inline std::string format_date(std::int64_t days) {
  const CivilDate c = civil_from_days(days);
  char buf[24];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", c.year, c.month, c.day);
  return std::string(buf);
}

// RFC 3339 UTC instant "YYYY-MM-DDTHH:MM:SSZ" -> seconds since epoch.
inline std::int64_t parse_rfc3339(const std::string& s) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
  char tz = 0, tail = 0;
  const int got = std::sscanf(s.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c%c",
                              &y, &mo, &d, &h, &mi, &sec, &tz, &tail);
  if (got != 7 || (tz != 'Z' && tz != 'z'))
    throw ValidationError("timestamp: expected RFC 3339 UTC instant, got '" + s + "'");
  if (mo < 1 || mo > 12 || d < 1 || d > days_in_month(y, mo) ||
      h < 0 || h > 23 || mi < 0 || mi > 59 || sec < 0 || sec > 59)
    throw ValidationError("timestamp: out-of-range component in '" + s + "'");
  return days_from_civil(y, mo, d) * kSecondsPerDay + h * 3600 + mi * 60 + sec;
}

inline std::string format_rfc3339(std::int64_t seconds) {
  std::int64_t days = seconds / kSecondsPerDay;
  std::int64_t rem = seconds % kSecondsPerDay;
  if (rem < 0) {
    rem += kSecondsPerDay;
    days -= 1;
  }
  const CivilDate c = civil_from_days(days);
  char buf[48];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", c.year, c.month, c.day,
                static_cast<int>(rem / 3600), static_cast<int>((rem % 3600) / 60),
                static_cast<int>(rem % 60));
  return std::string(buf);
}

inline int hour_of_day(std::int64_t seconds) {
  std::int64_t rem = seconds % kSecondsPerDay;
  if (rem < 0) rem += kSecondsPerDay;
  return static_cast<int>(rem / 3600);
}

// Calendar month key "YYYY-MM" for bucketing by campaign start date.
inline std::string month_key(std::int64_t days) {
  const CivilDate c = civil_from_days(days);
  char buf[24];
  std::snprintf(buf, sizeof buf, "%04d-%02d", c.year, c.month);
  return std::string(buf);
}

// Next calendar month after the given key, for gap-free series iteration.
inline std::string next_month(const std::string& key) {
  int y = 0, m = 0;
  if (std::sscanf(key.c_str(), "%4d-%2d", &y, &m) != 2)
    throw ValidationError("month key: expected YYYY-MM, got '" + key + "'");
  m += 1;
  if (m > 12) {
    m = 1;
    y += 1;
  }
  char buf[24];
  std::snprintf(buf, sizeof buf, "%04d-%02d", y, m);
  return std::string(buf);
}

}  // namespace arcane::timeutil
