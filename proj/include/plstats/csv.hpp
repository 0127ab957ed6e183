#pragma once

#include <optional>
#include <string>
#include <vector>

namespace plstats {

//! Raw CSV table: rows of string cells, with the header row (if any) split off.
struct CsvTable {
  std::vector<std::string> header; // empty if the file has no header row
  std::vector<std::vector<std::string>> rows;
};

//! Read a comma-separated file; a header row is detected when the first row
//! contains any cell that does not parse as a finite real.
//! Throws io_error if the file cannot be opened.
CsvTable read_csv(const std::string& path);

//! Strict locale-free parse of one cell; throws parse_error with row/column
//! context on failure.
double parse_cell(const std::string& cell, std::size_t row, std::size_t col);

//! True if the cell parses completely as a finite real.
bool cell_is_numeric(const std::string& cell);

//! %.17g formatting, round-trip exact for doubles.
std::string format_double(double v);

//! Single numeric column reader (header row skipped if present).
std::vector<double> read_value_column_csv(const std::string& path);

//! Single numeric column writer, no header.
void write_value_column_csv(const std::vector<double>& values, const std::string& path);

} // namespace plstats
