#include "natanzon/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace natanzon {

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

nlohmann::json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

std::vector<std::string> standard_header(const std::string& command) {
  return {"natanzon " + command, "units: 2m/hbar^2 = 1"};
}

void append_spec_header(std::vector<std::string>& header, const PotentialSpec& spec) {
  header.push_back("family: " + std::string(to_string(spec.info.family)));
  header.push_back("m1: " + spec.info.exponents.m1.str() + ", m2: " + spec.info.exponents.m2.str());
  const Coeffs t = spec.table();
  std::string labels = "labels:";
  for (double v : t) labels += " " + format_number(v);
  header.push_back(labels);
  header.push_back("sigma: " + format_number(spec.sigma) + ", x0: " + format_number(spec.x0));
  header.push_back("z branch: (" + format_number(spec.branch.lo) + ", " + format_number(spec.branch.hi) + ")");
}

void write_csv(std::ostream& os, const CsvTable& table) {
  for (const auto& h : table.header) os << "# " << h << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << '\n';
  }
}

nlohmann::json to_json(const PotentialSpec& spec) {
  nlohmann::json labels = nlohmann::json::array();
  for (double v : spec.table()) labels.push_back(json_number(v));
  return {{"family", std::string(to_string(spec.info.family))},
          {"m1", spec.info.exponents.m1.str()},
          {"m2", spec.info.exponents.m2.str()},
          {"labels", labels},
          {"sigma", spec.sigma},
          {"x0", spec.x0},
          {"branch", to_json(spec.branch)}};
}

}  // namespace natanzon
