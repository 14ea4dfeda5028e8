#pragma once

#include <string>
#include <variant>

#include "mrfoptics/scan.hpp"

namespace mrfoptics::cli {

enum class OutputFormat { csv, json };

std::optional<OutputFormat> parse_format(const std::string& s);

// CSV: header `angle_rad,<model>[,<model>...]`, one row per point,
// 15 significant digits, LF line endings.  Byte-identical for identical
// inputs.
std::string curve_to_csv(const RateCurve& curve);

// Single JSON object {metadata, swept, points}, keys in fixed order,
// numbers printed so that parsing reproduces them exactly.
std::string curve_to_json(const RateCurve& curve);

std::string report_to_csv(const ComparisonReport& report);
std::string report_to_json(const ComparisonReport& report);

using ParsedFile = std::variant<RateCurve, ComparisonReport>;

// Reads back a JSON file produced by curve_to_json or report_to_json.
// Malformed input raises DataError.
ParsedFile parse_json_file(const std::string& text);

std::string render(const ParsedFile& file, OutputFormat format);

// Writes bytes exactly as given; failures raise IoError.
void write_file(const std::string& path, const std::string& bytes);

std::string read_file(const std::string& path);

}  // namespace mrfoptics::cli
