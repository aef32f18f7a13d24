#pragma once

#include <string>
#include <variant>
#include <vector>

namespace slab {

// Writes to a temporary file in the same directory, then renames.
void write_file_atomic(const std::string& path, const std::string& contents);

// Shortest round-trip decimal, locale independent.
std::string format_double(double v);

using Cell = std::variant<double, long long, std::string>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add(std::vector<Cell> row);
    std::string to_csv() const;
};

// Parses a CSV produced by Table::to_csv (no quoting) into header + rows.
struct CsvData {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::vector<double> column(const std::string& name) const;
};
CsvData parse_csv(const std::string& text);

}  // namespace slab
