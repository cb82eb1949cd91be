// report.cpp - CSV and SVG emitters

#include "hseom/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hseom/format.hpp"
#include "hseom/linalg.hpp"

namespace hseom {

void CsvTable::add_row(std::vector<double> row)
{
    if (row.size() != columns.size()) throw std::invalid_argument("CsvTable row width differs from the header");
    rows.push_back(std::move(row));
}

std::string CsvTable::to_string() const
{
    std::ostringstream os;
    for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << columns[c];
    os << '\n';
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << format_double(row[c]);
        os << '\n';
    }
    return os.str();
}

namespace {

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, sep)) out.push_back(cell);
    return out;
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        if (c == '<')
            out += "&lt;";
        else if (c == '>')
            out += "&gt;";
        else if (c == '&')
            out += "&amp;";
        else
            out += c;
    }
    return out;
}

} // namespace

std::string svg_from_csv(const std::string& csv, const std::string& title)
{
    std::istringstream is(csv);
    std::string line;
    std::vector<std::string> header;
    std::vector<std::vector<double>> data;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto cells = split(line, ',');
        if (header.empty()) {
            header = cells;
            continue;
        }
        std::vector<double> row;
        for (const auto& cell : cells) {
            double v = 0.0;
            row.push_back(parse_double(cell, v) ? v : std::nan(""));
        }
        data.push_back(std::move(row));
    }
    if (header.size() < 2) throw std::invalid_argument("svg_from_csv needs at least two columns");

    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const auto& row : data) {
        if (row.size() != header.size()) continue;
        x0 = std::min(x0, row[0]);
        x1 = std::max(x1, row[0]);
        for (std::size_t c = 1; c < row.size(); ++c)
            if (std::isfinite(row[c])) {
                y0 = std::min(y0, row[c]);
                y1 = std::max(y1, row[c]);
            }
    }
    if (!(x1 > x0)) {
        x0 = std::isfinite(x0) ? x0 - 0.5 : 0.0;
        x1 = x0 + 1.0;
    }
    if (!(y1 > y0)) {
        y0 = std::isfinite(y0) ? y0 - 0.5 : 0.0;
        y1 = y0 + 1.0;
    }

    const double W = 640, H = 400, left = 70, right = 150, top = 40, bottom = 50;
    auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * (W - left - right); };
    auto py = [&](double y) { return H - bottom - (y - y0) / (y1 - y0) * (H - top - bottom); };
    static const char* colors[] = {"#c0392b", "#2471a3", "#229954", "#7d3c98", "#d68910", "#17202a"};

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">" << escape(title)
       << "</text>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << H - bottom << "\" x2=\"" << W - right << "\" y2=\"" << H - bottom
       << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << H - bottom
       << "\" stroke=\"black\"/>\n";
    os << "<text x=\"" << (left + W - right) / 2 << "\" y=\"" << H - 10 << "\" text-anchor=\"middle\" font-size=\"12\">"
       << escape(header[0]) << "</text>\n";
    os << "<text x=\"" << left << "\" y=\"" << H - bottom + 15 << "\" font-size=\"10\">" << format_double(x0)
       << "</text>\n";
    os << "<text x=\"" << W - right << "\" y=\"" << H - bottom + 15 << "\" text-anchor=\"end\" font-size=\"10\">"
       << format_double(x1) << "</text>\n";
    os << "<text x=\"" << left - 5 << "\" y=\"" << H - bottom << "\" text-anchor=\"end\" font-size=\"10\">"
       << format_double(y0) << "</text>\n";
    os << "<text x=\"" << left - 5 << "\" y=\"" << top + 10 << "\" text-anchor=\"end\" font-size=\"10\">"
       << format_double(y1) << "</text>\n";

    for (std::size_t c = 1; c < header.size(); ++c) {
        const char* color = colors[(c - 1) % 6];
        os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (const auto& row : data) {
            if (row.size() != header.size() || !std::isfinite(row[0]) || !std::isfinite(row[c])) continue;
            os << (first ? "" : " ") << format_double(px(row[0])) << ',' << format_double(py(row[c]));
            first = false;
        }
        os << "\"/>\n";
        const double ly = top + 15.0 * static_cast<double>(c);
        os << "<text x=\"" << W - right + 10 << "\" y=\"" << ly << "\" font-size=\"11\" fill=\"" << color << "\">"
           << escape(header[c]) << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    out << text;
    if (!out) throw ConfigError("failed writing '" + path.string() + "'");
}

} // namespace hseom
