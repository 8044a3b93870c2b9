#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "dholo/holonomy.hpp"
#include "dholo/spin.hpp"

namespace dholo::cli {

using Json = nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

/// Decimal radians or a rational multiple of pi: "0.3", "pi", "-pi/2",
/// "3*pi/4", "2pi". Throws Error(Parse).
double parse_angle(std::string_view text);

/// "3/2", "1.5" or "1".
SpinJ parse_spin(std::string_view text);

/// "theta,phi".
Direction parse_direction(std::string_view text);

/// Comma-separated real numbers.
std::vector<double> parse_number_list(std::string_view text);

/// One "theta phi" vertex per line, '#' starts a comment. Errors carry the
/// 1-based line number.
std::vector<Direction> parse_path_text(std::string_view text);
MeasurementPath read_path_file(const std::string& filename);

Json envelope(const std::string& command, Json parameters, Json results);

/// Sorted keys, two-space indent, trailing newline.
std::string to_json_text(const Json& j);

/// "key,value" lines with dotted keys; array elements use their index.
std::string to_csv_text(const Json& j);

Json complex_json(Complex z);
Json matrix_json(const ComplexMatrix& m);
Json direction_json(const Direction& d);

/// Runs one command line (without the program name). Exit codes: 0 ok,
/// 2 usage or parse error, 3 solver failure, 4 numerical contract violated.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dholo::cli
