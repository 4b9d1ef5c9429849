#include "skewfit/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace skewfit {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

bool parse_double(const std::string& cell, double& out) {
  if (cell.empty()) return false;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  const auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last;
}

}  // namespace

Dataset load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  long line_no = 0;
  std::size_t width = 0;
  bool header_checked = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split_row(line);
    std::vector<double> row(cells.size());
    bool all_numeric = true;
    std::size_t bad_col = 0;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (!parse_double(cells[c], row[c])) {
        all_numeric = false;
        bad_col = c;
        break;
      }
    }
    if (!header_checked) {
      header_checked = true;
      width = cells.size();
      if (!all_numeric) continue;  // header row
    }
    if (!all_numeric)
      throw ParseError(path + ": non-numeric cell at row " +
                       std::to_string(line_no) + ", column " +
                       std::to_string(bad_col + 1));
    if (cells.size() != width)
      throw ParseError(path + ": row " + std::to_string(line_no) + " has " +
                       std::to_string(cells.size()) + " cells, expected " +
                       std::to_string(width));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(path + ": no data rows");

  Eigen::MatrixXd y(static_cast<long>(rows.size()), static_cast<long>(width));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < width; ++j)
      y(static_cast<long>(i), static_cast<long>(j)) = rows[i][j];
  try {
    return Dataset(std::move(y));
  } catch (const DomainError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

void write_csv(const std::string& path, const Dataset& data,
               const std::vector<std::string>& column_names) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write " + path);
  out.precision(17);
  if (!column_names.empty()) {
    if (static_cast<int>(column_names.size()) != data.p())
      throw DomainError("write_csv: header width mismatch");
    for (std::size_t j = 0; j < column_names.size(); ++j)
      out << (j ? "," : "") << column_names[j];
    out << "\n";
  }
  for (long i = 0; i < data.n(); ++i) {
    for (int j = 0; j < data.p(); ++j) out << (j ? "," : "") << data.y(i, j);
    out << "\n";
  }
}

}  // namespace skewfit
