#pragma once

#include "stirap/config.hpp"

#include <iosfwd>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace stirap {

using Cell = std::variant<double, std::string>;

// Tabular command output. CSV layout: `# key: value` metadata lines, one
// column-header line, then data rows. The JSON form carries the same names:
// {"metadata": {...}, "columns": [...], "rows": [{column: value, ...}, ...]}.
struct Table {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// Shortest decimal string that round-trips the binary64 value; "nan", "inf", "-inf".
std::string format_number(double value);

void write_csv(std::ostream& out, const Table& table);
void write_json(std::ostream& out, const Table& table);
void write_table(std::ostream& out, const Table& table, OutputFormat format);

// Writes to `path` via a temporary file renamed into place; an empty path
// writes to standard output.
void write_table_file(const std::string& path, const Table& table, OutputFormat format);

}  // namespace stirap
