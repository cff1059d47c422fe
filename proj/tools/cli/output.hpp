#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "cli/config.hpp"
#include "tqd/critical.hpp"

namespace tqd::cli {

/// Shortest decimal form with 12 significant digits ("%.12g").
std::string format_number(double v);

/// `param,kt,<measures...>` then one row per grid point.
void write_csv(std::ostream& os, const critical::SweepSeries& series);
nlohmann::ordered_json to_json(const critical::SweepSeries& series);

nlohmann::ordered_json to_json(const critical::CpEstimate& e, std::string_view param);
void write_text(std::ostream& os, const critical::CpEstimate& e, std::string_view param);

/// Comparison tables; `leading` columns (e.g. h or gamma) are prepended.
void write_comparison_header(std::ostream& os, const std::vector<std::string>& leading = {});
void write_comparison_rows(std::ostream& os, const std::vector<critical::ComparisonRow>& rows,
                           const std::vector<double>& leading = {});

/// Writes `text` to `path`, or to stdout for "-". Throws std::runtime_error.
void emit(const std::string& path, const std::string& text, std::ostream& stdout_stream);

}  // namespace tqd::cli
