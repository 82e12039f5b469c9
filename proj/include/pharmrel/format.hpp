#pragma once

// Presentation helpers. The engine always returns full precision; rounding
// to whole percents, tenths of a percent, and tenths of a year happens here.

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "pharmrel/scenario.hpp"
#include "pharmrel/types.hpp"

namespace pharmrel::format {

/// Rounds to `decimals` places, half away from zero.
inline double round_to(double value, int decimals)
{
  const double scale = std::pow(10.0, decimals);
  return std::round(value * scale) / scale;
}

/// Probability as a percent string, e.g. percent(0.0991, 1) == "9.9%".
inline std::string percent(double probability, int decimals = 0)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f%%", decimals, round_to(probability * 100.0, decimals) + 0.0);
  return buf;
}

/// Years to one decimal, e.g. "4.7".
inline std::string years(double value)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.1f", round_to(value, 1) + 0.0);
  return buf;
}

/// 17 significant digits; parses back to the identical double.
inline std::string full(double value)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

inline constexpr std::array<std::string_view, 14> kCsvColumns{
    "z_api", "z_p", "z_l", "dis_mult", "rec_mult", "r", "s", "r_api", "r_pl",
    "crit_api", "crit_plant", "crit_line", "mean_uptime", "mean_downtime"};

inline std::string csv_header()
{
  std::string out;
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
    if (i) out += ',';
    out += kCsvColumns[i];
  }
  return out;
}

inline std::string csv_row(const SweepRow& row)
{
  const auto& r = row.report;
  std::string out = std::to_string(row.config.z_api) + ',' + std::to_string(row.config.z_p) + ',' +
                    std::to_string(row.config.z_l);
  for (double v : {row.multipliers.disruption, row.multipliers.recovery, r.r, r.s, r.r_api, r.r_pl, r.crit_api,
                   r.crit_plant, r.crit_line, r.mean_uptime, r.mean_downtime}) {
    out += ',';
    out += full(v);
  }
  return out;
}

inline void write_csv(std::ostream& os, const std::vector<SweepRow>& rows)
{
  os << csv_header() << '\n';
  for (const auto& row : rows) os << csv_row(row) << '\n';
}

namespace detail {

inline std::vector<std::string_view> split(std::string_view line, char sep)
{
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <class T>
T parse_number(std::string_view text, std::string_view column)
{
  T value{};
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw Error(ErrorKind::InvalidParameter, std::string(column), "cannot parse '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace detail

/// Parses the output of write_csv back into rows.
inline std::vector<SweepRow> read_csv(std::istream& is)
{
  std::string line;
  if (!std::getline(is, line) || line != csv_header()) {
    throw Error(ErrorKind::InvalidParameter, "csv", "missing or unexpected header");
  }
  std::vector<SweepRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = detail::split(line, ',');
    if (cells.size() != kCsvColumns.size()) {
      throw Error(ErrorKind::InvalidParameter, "csv", "expected 14 columns, got " + std::to_string(cells.size()));
    }
    auto num = [&](std::size_t i) { return detail::parse_number<double>(cells[i], kCsvColumns[i]); };
    SweepRow row;
    row.config = {detail::parse_number<int>(cells[0], kCsvColumns[0]),
                  detail::parse_number<int>(cells[1], kCsvColumns[1]),
                  detail::parse_number<int>(cells[2], kCsvColumns[2])};
    row.multipliers = {num(3), num(4)};
    row.report = {num(5), num(6), num(7), num(8), num(9), num(10), num(11), num(12), num(13)};
    rows.push_back(row);
  }
  return rows;
}

/// Fixed-width table with rounded shortage (0.1%) and times (0.1 y).
inline void write_table(std::ostream& os, const std::vector<SweepRow>& rows)
{
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-8s %6s %6s %9s %12s %12s %9s %9s %9s\n", "config", "dis", "rec", "shortage",
                "uptime(y)", "downtime(y)", "crit_api", "crit_pl", "crit_ln");
  os << buf;
  for (const auto& row : rows) {
    const auto& r = row.report;
    std::snprintf(buf, sizeof buf, "%-8s %6g %6g %9s %12s %12s %9.4f %9.4f %9.4f\n", row.config.label().c_str(),
                  row.multipliers.disruption, row.multipliers.recovery, percent(r.s, 1).c_str(),
                  years(r.mean_uptime).c_str(), years(r.mean_downtime).c_str(), r.crit_api, r.crit_plant,
                  r.crit_line);
    os << buf;
  }
}

}  // namespace pharmrel::format
