#pragma once

#include <charconv>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "epicount/errors.hpp"

namespace epicount::csv {

struct Table {
  std::string path;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;  // data rows, header excluded
  std::vector<std::size_t> line_numbers;       // 1-based source line per row
};

inline std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

inline Table read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open file: " + path);
  Table table;
  table.path = path;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = split_line(line);
    if (table.header.empty()) {
      table.header = std::move(fields);
    } else {
      table.rows.push_back(std::move(fields));
      table.line_numbers.push_back(lineno);
    }
  }
  if (table.header.empty())
    throw input_error(path + ": file is empty");
  return table;
}

inline double parse_double(const Table& t, std::size_t row, std::size_t col) {
  const std::string& s = t.rows[row][col];
  double value = 0;
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end)
    throw input_error(t.path + ":" + std::to_string(t.line_numbers[row]) +
                      ": not a number: '" + s + "'");
  return value;
}

inline long parse_count(const Table& t, std::size_t row, std::size_t col) {
  double v = parse_double(t, row, col);
  long n = static_cast<long>(v);
  if (v < 0 || static_cast<double>(n) != v)
    throw input_error(t.path + ":" + std::to_string(t.line_numbers[row]) +
                      ": expected a nonnegative integer, got '" +
                      t.rows[row][col] + "'");
  return n;
}

inline void require_fields(const Table& t, std::size_t row, std::size_t n) {
  if (t.rows[row].size() != n)
    throw input_error(t.path + ":" + std::to_string(t.line_numbers[row]) +
                      ": expected " + std::to_string(n) + " fields, got " +
                      std::to_string(t.rows[row].size()));
}

// Shortest decimal form that round-trips to the same double.
inline std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  (void)ec;
  return std::string(buf, ptr);
}

class Writer {
public:
  explicit Writer(const std::string& path) : out_(path), path_(path) {
    if (!out_) throw input_error("cannot open file for writing: " + path);
  }

  void row(const std::vector<std::string>& fields) {
    for (std::size_t k = 0; k < fields.size(); ++k) {
      if (k > 0) out_ << ',';
      out_ << fields[k];
    }
    out_ << '\n';
  }

  std::ostream& stream() { return out_; }
  const std::string& path() const { return path_; }

private:
  std::ofstream out_;
  std::string path_;
};

}  // namespace epicount::csv
