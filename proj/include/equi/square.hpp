#pragma once

#include <compare>
#include <cstddef>
#include <filesystem>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace equi {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct Cell {
  int row = 0;
  int col = 0;

  friend auto operator<=>(const Cell&, const Cell&) = default;
};

std::string to_string(const Cell& cell);

/// An n x n array over symbols 0..n-1 in which every symbol occurs exactly n
/// times. Only constructible through validate_square, so every instance holds
/// the invariant.
class EquiNSquare {
public:
  int order() const { return n_; }
  int at(int row, int col) const { return grid_[static_cast<std::size_t>(row) * n_ + col]; }
  int at(const Cell& c) const { return at(c.row, c.col); }
  std::span<const int> row(int r) const {
    return {grid_.data() + static_cast<std::size_t>(r) * n_, static_cast<std::size_t>(n_)};
  }
  std::span<const int> cells() const { return grid_; }

  friend bool operator==(const EquiNSquare&, const EquiNSquare&) = default;

private:
  friend EquiNSquare validate_square(int n, std::vector<int> grid);
  EquiNSquare(int n, std::vector<int> grid) : n_(n), grid_(std::move(grid)) {}

  int n_;
  std::vector<int> grid_;  // row-major
};

class SquareError : public Error {
public:
  enum class Kind { DimensionMismatch, SymbolOutOfRange, CountViolation };

  SquareError(Kind kind, std::string what, Cell cell = {}, int value = -1, int count = -1)
      : Error(std::move(what)), kind_(kind), cell_(cell), value_(value), count_(count) {}

  Kind kind() const { return kind_; }
  /// Offending cell for SymbolOutOfRange.
  Cell cell() const { return cell_; }
  /// Offending value (SymbolOutOfRange) or symbol (CountViolation).
  int value() const { return value_; }
  int count() const { return count_; }

private:
  Kind kind_;
  Cell cell_;
  int value_;
  int count_;
};

EquiNSquare validate_square(int n, std::vector<int> grid);
EquiNSquare validate_square(int n, const std::vector<std::vector<int>>& grid);

/// A set of cells with pairwise distinct rows, columns and symbols, stored
/// sorted by row.
class Transversal {
public:
  Transversal() = default;

  std::size_t size() const { return cells_.size(); }
  bool empty() const { return cells_.empty(); }
  std::span<const Cell> cells() const { return cells_; }
  auto begin() const { return cells_.begin(); }
  auto end() const { return cells_.end(); }

  friend bool operator==(const Transversal&, const Transversal&) = default;

private:
  friend Transversal validate_transversal(const EquiNSquare&, std::span<const Cell>);
  explicit Transversal(std::vector<Cell> cells) : cells_(std::move(cells)) {}

  std::vector<Cell> cells_;
};

class TransversalError : public Error {
public:
  enum class Kind { CellOutOfRange, RowClash, ColClash, SymbolClash };

  TransversalError(Kind kind, Cell first, Cell second, std::string what)
      : Error(std::move(what)), kind_(kind), first_(first), second_(second) {}

  Kind kind() const { return kind_; }
  Cell first() const { return first_; }
  Cell second() const { return second_; }

private:
  Kind kind_;
  Cell first_;
  Cell second_;
};

Transversal validate_transversal(const EquiNSquare& square, std::span<const Cell> cells);

class ParseError : public Error {
public:
  ParseError(int line, std::string reason)
      : Error("ParseError(line " + std::to_string(line) + ", \"" + reason + "\")"),
        line_(line),
        reason_(std::move(reason)) {}

  int line() const { return line_; }
  const std::string& reason() const { return reason_; }

private:
  int line_;
  std::string reason_;
};

class IoError : public Error {
public:
  using Error::Error;
};

// Text formats. Square: "n\n" followed by n lines of n space separated symbol
// ids. Transversal: one "row col" line per cell.
std::string format_square(const EquiNSquare& square);
EquiNSquare parse_square(std::string_view text);
std::string format_cells(std::span<const Cell> cells);
std::vector<Cell> parse_cells(std::string_view text);

EquiNSquare read_square(const std::filesystem::path& path);
void write_square(const EquiNSquare& square, const std::filesystem::path& path);
std::vector<Cell> read_cells(const std::filesystem::path& path);
void write_transversal(const Transversal& t, const std::filesystem::path& path);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace equi
