#include <charconv>
#include <cmath>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include "dholo/cli.hpp"
#include "dholo/errors.hpp"

namespace dholo::cli {

namespace {

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(begin, end - begin + 1));
}

bool parse_double(const std::string& s, double& value) {
  if (s.empty()) return false;
  const char* first = s.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), value);
  return ec == std::errc{} && ptr == s.data() + s.size() && std::isfinite(value);
}

}  // namespace

double parse_angle(std::string_view text) {
  const std::string s = trim(text);
  double value = 0.0;
  if (parse_double(s, value)) return value;
  static const std::regex pi_form(R"(^([+-]?)\s*(?:(\d+)\s*\*?\s*)?pi\s*(?:/\s*(\d+))?$)");
  std::smatch m;
  if (!std::regex_match(s, m, pi_form))
    throw Error(ErrorKind::Parse, "cannot parse angle '" + s + "'");
  const long k = m[2].matched ? std::stol(m[2].str()) : 1;
  const long d = m[3].matched ? std::stol(m[3].str()) : 1;
  if (d == 0) throw Error(ErrorKind::Parse, "zero denominator in angle '" + s + "'");
  const double sign = m[1].str() == "-" ? -1.0 : 1.0;
  return sign * (static_cast<double>(k) / static_cast<double>(d)) * kPi;
}

SpinJ parse_spin(std::string_view text) {
  const std::string s = trim(text);
  static const std::regex frac(R"(^(\d+)\s*/\s*2$)");
  std::smatch m;
  int twice_j = 0;
  if (std::regex_match(s, m, frac)) {
    twice_j = std::stoi(m[1].str());
  } else {
    double v = 0.0;
    if (!parse_double(s, v) || std::abs(2.0 * v - std::round(2.0 * v)) > 1e-12)
      throw Error(ErrorKind::Parse, "spin must be a multiple of 1/2, got '" + s + "'");
    twice_j = static_cast<int>(std::lround(2.0 * v));
  }
  if (twice_j < 1) throw Error(ErrorKind::Parse, "spin must be at least 1/2, got '" + s + "'");
  return SpinJ(twice_j);
}

Direction parse_direction(std::string_view text) {
  const auto comma = text.find(',');
  if (comma == std::string_view::npos)
    throw Error(ErrorKind::Parse, "direction must be 'theta,phi', got '" + std::string(text) + "'");
  const double theta = parse_angle(text.substr(0, comma));
  const double phi = parse_angle(text.substr(comma + 1));
  try {
    return Direction(theta, phi);
  } catch (const Error& e) {
    throw Error(ErrorKind::Parse, e.message());
  }
}

std::vector<double> parse_number_list(std::string_view text) {
  std::vector<double> out;
  std::string item;
  std::istringstream in{std::string(text)};
  while (std::getline(in, item, ',')) {
    double v = 0.0;
    if (!parse_double(trim(item), v)) throw Error(ErrorKind::Parse, "cannot parse number '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorKind::Parse, "empty number list");
  return out;
}

std::vector<Direction> parse_path_text(std::string_view text) {
  std::vector<Direction> vertices;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    for (char& c : line)
      if (c == ',') c = ' ';
    std::istringstream fields(line);
    std::vector<std::string> tokens;
    for (std::string t; fields >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (tokens.size() != 2) throw Error(ErrorKind::Parse, where + "expected 'theta phi'");
    try {
      vertices.emplace_back(parse_angle(tokens[0]), parse_angle(tokens[1]));
    } catch (const Error& e) {
      throw Error(ErrorKind::Parse, where + e.message());
    }
  }
  return vertices;
}

MeasurementPath read_path_file(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw Error(ErrorKind::Parse, "cannot open path file '" + filename + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  auto vertices = parse_path_text(buffer.str());
  try {
    return MeasurementPath(std::move(vertices));
  } catch (const Error& e) {
    throw Error(ErrorKind::Parse, filename + ": " + e.message());
  }
}

}  // namespace dholo::cli
