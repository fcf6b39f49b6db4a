#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace procx {

using CsvRow = std::vector<std::string>;

/// RFC 4180 reader: quoted fields may hold commas, quotes ("") and newlines.
std::vector<CsvRow> read_csv(std::istream& in);
std::vector<CsvRow> read_csv_file(const std::string& path);

/// Quotes a field only when it contains a comma, quote or line break.
std::string csv_field(std::string_view value);
std::string csv_line(const CsvRow& row);

}  // namespace procx
