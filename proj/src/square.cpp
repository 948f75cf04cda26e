#include "equi/square.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace equi {

std::string to_string(const Cell& cell) {
  return "(" + std::to_string(cell.row) + "," + std::to_string(cell.col) + ")";
}

EquiNSquare validate_square(int n, std::vector<int> grid) {
  if (n < 1 || grid.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {
    throw SquareError(SquareError::Kind::DimensionMismatch,
                      "DimensionMismatch(n=" + std::to_string(n) + ", cells=" +
                          std::to_string(grid.size()) + ")");
  }
  std::vector<int> counts(n, 0);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const int v = grid[i];
    if (v < 0 || v >= n) {
      const Cell c{static_cast<int>(i / n), static_cast<int>(i % n)};
      throw SquareError(SquareError::Kind::SymbolOutOfRange,
                        "SymbolOutOfRange(" + std::to_string(v) + ", " + to_string(c) + ")", c,
                        v);
    }
    ++counts[v];
  }
  for (int s = 0; s < n; ++s) {
    if (counts[s] != n) {
      throw SquareError(SquareError::Kind::CountViolation,
                        "CountViolation(" + std::to_string(s) + ", " +
                            std::to_string(counts[s]) + ")",
                        {}, s, counts[s]);
    }
  }
  return EquiNSquare(n, std::move(grid));
}

EquiNSquare validate_square(int n, const std::vector<std::vector<int>>& grid) {
  if (n < 1 || grid.size() != static_cast<std::size_t>(n)) {
    throw SquareError(SquareError::Kind::DimensionMismatch,
                      "DimensionMismatch(n=" + std::to_string(n) + ", rows=" +
                          std::to_string(grid.size()) + ")");
  }
  std::vector<int> flat;
  flat.reserve(static_cast<std::size_t>(n) * n);
  for (const auto& row : grid) {
    if (row.size() != static_cast<std::size_t>(n)) {
      throw SquareError(SquareError::Kind::DimensionMismatch,
                        "DimensionMismatch(n=" + std::to_string(n) + ", row length " +
                            std::to_string(row.size()) + ")");
    }
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return validate_square(n, std::move(flat));
}

Transversal validate_transversal(const EquiNSquare& square, std::span<const Cell> cells) {
  const int n = square.order();
  // index into `cells` of the cell holding each row / column / symbol
  std::vector<int> by_row(n, -1), by_col(n, -1), by_sym(n, -1);
  auto clash = [&](TransversalError::Kind kind, const char* name, int prev, std::size_t cur) {
    return TransversalError(kind, cells[prev], cells[cur],
                            std::string(name) + "(" + to_string(cells[prev]) + ", " +
                                to_string(cells[cur]) + ")");
  };
  for (std::size_t i = 0; i < cells.size(); ++i) {
    const Cell& c = cells[i];
    if (c.row < 0 || c.row >= n || c.col < 0 || c.col >= n) {
      throw TransversalError(TransversalError::Kind::CellOutOfRange, c, c,
                             "CellOutOfRange(" + to_string(c) + ")");
    }
    if (by_row[c.row] >= 0) throw clash(TransversalError::Kind::RowClash, "RowClash", by_row[c.row], i);
    if (by_col[c.col] >= 0) throw clash(TransversalError::Kind::ColClash, "ColClash", by_col[c.col], i);
    const int s = square.at(c);
    if (by_sym[s] >= 0) throw clash(TransversalError::Kind::SymbolClash, "SymbolClash", by_sym[s], i);
    by_row[c.row] = by_col[c.col] = by_sym[s] = static_cast<int>(i);
  }
  std::vector<Cell> sorted(cells.begin(), cells.end());
  std::sort(sorted.begin(), sorted.end());
  return Transversal(std::move(sorted));
}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

std::vector<int> parse_ints(std::string_view line, int line_no) {
  std::vector<int> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\r' || line[i] == '\t') {
      ++i;
      continue;
    }
    int value = 0;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), value);
    if (ec != std::errc() || (ptr != line.data() + line.size() && *ptr != ' ' && *ptr != '\r' &&
                              *ptr != '\t')) {
      throw ParseError(line_no, "invalid integer");
    }
    out.push_back(value);
    i = static_cast<std::size_t>(ptr - line.data());
  }
  return out;
}

bool blank(std::string_view line) {
  return line.find_first_not_of(" \t\r") == std::string_view::npos;
}

}  // namespace

std::string format_square(const EquiNSquare& square) {
  std::string out = std::to_string(square.order()) + "\n";
  for (int r = 0; r < square.order(); ++r) {
    auto row = square.row(r);
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ' ';
      out += std::to_string(row[c]);
    }
    out += '\n';
  }
  return out;
}

EquiNSquare parse_square(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || blank(lines[0])) throw ParseError(1, "expected order n");
  const auto header = parse_ints(lines[0], 1);
  if (header.size() != 1 || header[0] < 1) throw ParseError(1, "expected order n");
  const int n = header[0];
  std::vector<int> grid;
  grid.reserve(static_cast<std::size_t>(n) * n);
  for (int r = 0; r < n; ++r) {
    const int line_no = r + 2;
    if (static_cast<std::size_t>(r + 1) >= lines.size()) {
      throw ParseError(line_no, "expected " + std::to_string(n) + " rows");
    }
    const auto row = parse_ints(lines[r + 1], line_no);
    if (row.size() != static_cast<std::size_t>(n)) {
      throw ParseError(line_no, "expected " + std::to_string(n) + " entries");
    }
    grid.insert(grid.end(), row.begin(), row.end());
  }
  for (std::size_t i = n + 1; i < lines.size(); ++i) {
    if (!blank(lines[i])) throw ParseError(static_cast<int>(i) + 1, "unexpected trailing data");
  }
  return validate_square(n, std::move(grid));
}

std::string format_cells(std::span<const Cell> cells) {
  std::string out;
  for (const Cell& c : cells) out += std::to_string(c.row) + " " + std::to_string(c.col) + "\n";
  return out;
}

std::vector<Cell> parse_cells(std::string_view text) {
  std::vector<Cell> cells;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (blank(lines[i])) continue;
    const auto v = parse_ints(lines[i], static_cast<int>(i) + 1);
    if (v.size() != 2) throw ParseError(static_cast<int>(i) + 1, "expected \"row col\"");
    cells.push_back({v[0], v[1]});
  }
  return cells;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

EquiNSquare read_square(const std::filesystem::path& path) { return parse_square(read_text(path)); }

void write_square(const EquiNSquare& square, const std::filesystem::path& path) {
  write_text(path, format_square(square));
}

std::vector<Cell> read_cells(const std::filesystem::path& path) { return parse_cells(read_text(path)); }

void write_transversal(const Transversal& t, const std::filesystem::path& path) {
  write_text(path, format_cells(t.cells()));
}

}  // namespace equi
