#ifndef RPD_CURVE_IO_HPP
#define RPD_CURVE_IO_HPP

// Curve files: one curve per row, one comma-separated column per grid
// point. An optional first row lists the grid abscissae; without it the
// grid is taken as equispaced on [0, 1].

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "rpd/core.hpp"

namespace rpd {

class ParseError : public StructuralError {
public:
  using StructuralError::StructuralError;
};

/// Shortest decimal form that round-trips: 17 significant digits.
inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

/// Parses a finite decimal; the whole field (after trimming blanks) must be
/// consumed.
inline double parse_real(const std::string& field, const std::string& where) {
  const auto first = field.find_first_not_of(" \t\r");
  const auto last = field.find_last_not_of(" \t\r");
  if (first == std::string::npos)
    throw ParseError(where + ": empty field");
  const std::string token = field.substr(first, last - first + 1);
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size() || errno == ERANGE || !std::isfinite(v))
    throw ParseError(where + ": '" + token + "' is not a finite decimal number");
  return v;
}

inline std::vector<std::vector<double>> read_csv_matrix(std::istream& in,
                                                        const std::string& name) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string field;
    std::size_t col = 0;
    while (std::getline(ss, field, ','))
      row.push_back(parse_real(field, name + " line " + std::to_string(lineno) + " column " +
                                          std::to_string(++col)));
    if (!line.empty() && line.back() == ',')
      throw ParseError(name + " line " + std::to_string(lineno) + ": trailing comma");
    if (!rows.empty() && row.size() != rows.front().size())
      throw ParseError(name + " line " + std::to_string(lineno) + ": expected " +
                       std::to_string(rows.front().size()) + " columns, found " +
                       std::to_string(row.size()));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Reads a curve file. With `grid_header` the first row is the grid. If
/// `grid` is given, the file must match it (header or column count).
inline FunctionalSample read_curves(std::istream& in, const std::string& name, bool grid_header,
                                    GridPtr grid = nullptr) {
  auto rows = read_csv_matrix(in, name);
  if (grid_header) {
    if (rows.empty())
      throw ParseError(name + ": missing grid header row");
    GridPtr file_grid;
    try {
      file_grid = std::make_shared<const Grid>(rows.front());
    } catch (const StructuralError& e) {
      throw ParseError(name + ": invalid grid header: " + e.what());
    }
    if (grid && !same_grid(grid, file_grid))
      throw ParseError(name + ": grid header differs from the reference grid");
    grid = grid ? grid : file_grid;
    rows.erase(rows.begin());
  }
  if (rows.empty())
    throw ParseError(name + ": no curves");
  if (!grid) {
    if (rows.front().size() < 2)
      throw ParseError(name + ": curves need at least 2 grid values");
    grid = Grid::uniform(rows.front().size());
  }
  if (rows.front().size() != grid->count())
    throw ParseError(name + ": curves have " + std::to_string(rows.front().size()) +
                     " values but the grid has " + std::to_string(grid->count()) + " points");
  return FunctionalSample::from_rows(rows, grid);
}

inline FunctionalSample read_curve_file(const std::string& path, bool grid_header,
                                        GridPtr grid = nullptr) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open " + path);
  return read_curves(in, path, grid_header, std::move(grid));
}

inline void write_curves(std::ostream& out, const FunctionalSample& s, bool grid_header) {
  auto row = [&out](std::span<const double> v) {
    for (std::size_t j = 0; j < v.size(); ++j)
      out << (j ? "," : "") << format_real(v[j]);
    out << '\n';
  };
  if (grid_header)
    row(s.grid()->points());
  for (const Curve& c : s)
    row(c.values());
}

} // namespace rpd

#endif // RPD_CURVE_IO_HPP
