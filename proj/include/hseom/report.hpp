// report.hpp - CSV tables, SVG line plots and run manifests

#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace hseom {

// Numeric table; column names carry their unit in parentheses.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_row(std::vector<double> row);
    std::string to_string() const; // shortest round-trip decimals
};

// Axis-labeled polylines of every column against the first, built from the
// CSV text alone. Lines starting with '#' are skipped; the first remaining
// line is the header.
std::string svg_from_csv(const std::string& csv, const std::string& title);

void write_text(const std::filesystem::path& path, const std::string& text);

} // namespace hseom
