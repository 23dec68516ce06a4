#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tempo::csv {

/// Shortest round-trip formatting; NaN becomes the empty field.
std::string format_double(double v);

/// Empty fields parse back to NaN.
double parse_double(const std::string& s);

int64_t parse_int(const std::string& s);

std::vector<std::string> split(const std::string& line, char sep = ',');

/// Reads a delimited file into rows of fields; blank lines are skipped.
std::vector<std::vector<std::string>> read_table(const std::string& path, char sep = ',');

}  // namespace tempo::csv
