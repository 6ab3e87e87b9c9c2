#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "natanzon/potentials.hpp"

namespace natanzon {

/// 15 significant digits; non-finite values as inf, -inf, nan.
std::string format_number(double v);

/// Number for JSON output; non-finite values become the strings above.
nlohmann::json json_number(double v);

/// Header lines every emitter starts with, "#"-prefixed.
std::vector<std::string> standard_header(const std::string& command);

/// Adds class, coefficients, sigma, x0 and branch lines for spec.
void append_spec_header(std::vector<std::string>& header, const PotentialSpec& spec);

struct CsvTable {
  std::vector<std::string> header;  // without the leading "# "
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;  // cells, numbers via format_number
};

void write_csv(std::ostream& os, const CsvTable& table);

nlohmann::json to_json(const PotentialSpec& spec);

}  // namespace natanzon
