// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace crossdip::table {

using Cell = std::variant<double, long, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
};

/// Doubles rendered via std::to_chars shortest round-trip form: parsing the
/// field recovers the exact bit pattern. '.' decimal separator regardless of
/// locale.
std::string format_double(double v);

/// RFC 4180 CSV: header row, LF line endings, fields quoted only when needed.
std::string to_csv(const Table& t);

/// The same table as a JSON array of row objects.
std::string to_json(const Table& t);

/// Parse one CSV numeric field back to a double (round-trip of format_double).
double parse_double(const std::string& field);

/// Write text to path, creating parent directories. Throws
/// std::runtime_error carrying the path on failure.
void write_file(const std::filesystem::path& path, const std::string& text);

} // namespace crossdip::table
