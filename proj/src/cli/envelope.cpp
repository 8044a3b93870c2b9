#include <string>

#include "dholo/cli.hpp"

namespace dholo::cli {

Json envelope(const std::string& command, Json parameters, Json results) {
  Json e = Json::object();
  e["command"] = command;
  e["parameters"] = std::move(parameters);
  e["results"] = std::move(results);
  e["version"] = kVersion;
  return e;
}

std::string to_json_text(const Json& j) { return j.dump(2) + "\n"; }

namespace {

void flatten(const Json& j, const std::string& prefix, std::string& out) {
  auto child = [&](const std::string& key) { return prefix.empty() ? key : prefix + "." + key; };
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) flatten(value, child(key), out);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], child(std::to_string(i)), out);
  } else {
    out += prefix + "," + (j.is_string() ? j.get<std::string>() : j.dump()) + "\n";
  }
}

}  // namespace

std::string to_csv_text(const Json& j) {
  std::string out = "key,value\n";
  flatten(j, "", out);
  return out;
}

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json matrix_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Json direction_json(const Direction& d) { return Json::array({d.theta(), d.phi()}); }

}  // namespace dholo::cli
