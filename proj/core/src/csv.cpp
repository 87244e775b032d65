#include "rateproj/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rateproj/error.hpp"

namespace rateproj {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    cells.push_back(cur);
    return cells;
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    throw ValidationError(path + ": missing column '" + name + "'");
}

const std::string& CsvTable::cell(std::size_t row, std::size_t col) const {
    return rows[row][col];
}

std::string CsvTable::where(std::size_t row, std::size_t col) const {
    return path + ":" + std::to_string(line_numbers[row]) + ", column '" + header[col] + "'";
}

double CsvTable::number(std::size_t row, std::size_t col) const {
    const std::string& s = rows[row][col];
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw ValidationError(where(row, col) + ": non-numeric cell '" + s + "'");
    }
    return v;
}

int CsvTable::integer(std::size_t row, std::size_t col) const {
    const std::string& s = rows[row][col];
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ValidationError(where(row, col) + ": non-integer cell '" + s + "'");
    }
    return v;
}

CsvTable read_csv(const std::string& path, const std::vector<std::string>& required_columns) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError("cannot open input file '" + path + "'");
    }
    CsvTable table;
    table.path = path;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        auto cells = split_line(line);
        if (table.header.empty()) {
            table.header = std::move(cells);
            continue;
        }
        if (cells.size() != table.header.size()) {
            throw ValidationError(path + ":" + std::to_string(line_no) + ": expected " +
                                  std::to_string(table.header.size()) + " cells, found " +
                                  std::to_string(cells.size()));
        }
        table.rows.push_back(std::move(cells));
        table.line_numbers.push_back(line_no);
    }
    if (table.header.empty()) {
        throw ValidationError(path + ": empty file, header row required");
    }
    for (const auto& c : required_columns) table.column(c);
    return table;
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ofstream out(path);
    if (!out) {
        throw ValidationError("cannot open output file '" + path + "'");
    }
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out << ',';
        out << header[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << row[i];
        }
        out << '\n';
    }
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace rateproj
