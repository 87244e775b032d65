#ifndef RATEPROJ_CSV_HPP_
#define RATEPROJ_CSV_HPP_

#include <cstddef>
#include <string>
#include <vector>

namespace rateproj {

// Minimal comma-separated table with a header row. Cells carry no
// quoting; rows remember their source line for diagnostics.
struct CsvTable {
    std::string path;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;

    std::size_t column(const std::string& name) const;  // throws if absent
    const std::string& cell(std::size_t row, std::size_t col) const;
    double number(std::size_t row, std::size_t col) const;
    int integer(std::size_t row, std::size_t col) const;

    // "file:line, column 'name'" prefix for error messages.
    std::string where(std::size_t row, std::size_t col) const;
};

// Reads a CSV file, verifying the required columns exist. Blank lines
// are skipped; every data row must have exactly as many cells as the
// header.
CsvTable read_csv(const std::string& path, const std::vector<std::string>& required_columns);

// Writes rows joined by commas with a trailing newline per row.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

// Fixed-precision decimal formatting used for all emitted numbers, so
// outputs are byte-stable.
std::string format_number(double v);

}  // namespace rateproj

#endif  // RATEPROJ_CSV_HPP_
