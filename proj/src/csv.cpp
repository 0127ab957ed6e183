#include "plstats/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "plstats/errors.hpp"

namespace plstats {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

std::string trimmed(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

bool try_parse(const std::string& cell, double& out) {
  const std::string t = trimmed(cell);
  if (t.empty()) return false;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

} // namespace

bool cell_is_numeric(const std::string& cell) {
  double v;
  return try_parse(cell, v);
}

double parse_cell(const std::string& cell, std::size_t row, std::size_t col) {
  double v;
  if (!try_parse(cell, v))
    throw parse_error("CSV cell at row " + std::to_string(row) + ", column " +
                      std::to_string(col) + " does not parse as a finite real: '" + cell + "'");
  return v;
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open file: " + path);
  CsvTable table;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto cells = split_line(line);
    if (first) {
      first = false;
      bool any_non_numeric = false;
      for (const auto& c : cells)
        if (!cell_is_numeric(c)) { any_non_numeric = true; break; }
      if (any_non_numeric && cells.size() >= 1) {
        table.header = std::move(cells);
        continue;
      }
    }
    table.rows.push_back(std::move(cells));
  }
  return table;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> read_value_column_csv(const std::string& path) {
  CsvTable table = read_csv(path);
  std::vector<double> values;
  values.reserve(table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    if (table.rows[i].size() != 1)
      throw parse_error("expected a single column in " + path + ", row " + std::to_string(i));
    values.push_back(parse_cell(table.rows[i][0], i, 0));
  }
  return values;
}

void write_value_column_csv(const std::vector<double>& values, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write file: " + path);
  for (double v : values) out << format_double(v) << '\n';
}

} // namespace plstats
