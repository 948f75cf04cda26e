#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "equi/square.hpp"

namespace equi {

class ConstructionError : public Error {
public:
  enum class Kind { TooSmall, NotDivisible, InvalidParam, BlockMismatch, CertificateViolation };

  ConstructionError(Kind kind, std::string what) : Error(std::move(what)), kind_(kind) {}
  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

/// Two boxes sharing one colour. Boxes are addressed by (box row, box column);
/// box (i, j) spans rows [i*b, (i+1)*b) and columns [j*a, (j+1)*a).
struct BoxPair {
  int row1 = 0, col1 = 0;
  int row2 = 0, col2 = 0;
  int colour = 0;
};

/// Box geometry and colour assignment of the adversarial square.
struct BoxPairing {
  int n = 0;
  int m = 0;  // ceil(sqrt(n/2))
  int r = 0;  // ceil(sqrt(m^2 - n/2))
  int a = 0;  // box width, m + r
  int b = 0;  // box height, m - r
  std::vector<BoxPair> pairs;
  /// Cells outside the leading 2ab x 2ab sub-square, with their colour.
  std::vector<std::pair<Cell, int>> leftover_fill;

  /// Side length 2ab of the boxed sub-square.
  int boxed_side() const { return 2 * a * b; }
  /// Colour of box (i, j), or -1 when out of range.
  int box_colour(int box_row, int box_col) const;
  /// n - ceil(b/2) + 2(n - 2ab): upper bound on any transversal.
  int implied_bound() const { return n - (b + 1) / 2 + 2 * (n - boxed_side()); }
};

struct Counterexample {
  EquiNSquare square;
  BoxPairing pairing;
};

/// Square with no transversal larger than n - ceil(b/2) + 2(n - 2ab): boxes
/// are paired diagonally (2k, 2k)~(2k+1, 2k+1) for k < b, symmetrically
/// (i, j)~(j, i) for i < j < 2b, and vertically (2s, t)~(2s+1, t) for
/// b <= s < a, t < 2b; every pair gets its own colour. Remaining cells are
/// filled row-major from a queue of colour deficits ordered by colour id.
Counterexample counterexample_square(int n);

struct CertificateReport {
  /// missing[k] = colours of the box bands 2k and 2k+1 absent from T'.
  std::vector<std::vector<int>> missing;
  /// Values of k whose missing set is empty.
  std::vector<int> violations;
  int transversal_size = 0;
  /// |T'| where T' keeps the cells inside the boxed sub-square.
  int boxed_size = 0;
  int implied_bound = 0;

  bool ok() const { return violations.empty() && transversal_size <= implied_bound; }
};

/// Computes the report without throwing on violations.
CertificateReport audit_missing_colours(const EquiNSquare& square, const BoxPairing& pairing,
                                        const Transversal& transversal);

/// As audit_missing_colours, but throws CertificateViolation(k) on the first
/// band with no missing colour.
CertificateReport missing_colour_certificate(const EquiNSquare& square, const BoxPairing& pairing,
                                             const Transversal& transversal);

/// Uniformly shuffled multiset (each symbol n times) laid out row-major.
EquiNSquare random_equi_square(int n, std::uint64_t seed);

/// m cells of one column that all carry the same symbol.
struct Block {
  int col = 0;
  int symbol = 0;
  std::vector<int> rows;  // sorted
};

struct BlockStructure {
  int n = 0;
  int m = 0;
  std::vector<Block> blocks;  // block id = index
  /// Block id of every cell, row-major.
  std::vector<int> block_of_cell;

  int block_at(int row, int col) const { return block_of_cell[static_cast<std::size_t>(row) * n + col]; }
  int blocks_per_column() const { return m ? n / m : 0; }
};

/// Rebuilds block_of_cell and checks the structure against the square:
/// blocks of m cells, single column, single symbol, partitioning all cells.
void validate_blocks(const EquiNSquare& square, BlockStructure& blocks);

struct BlockSquare {
  EquiNSquare square;
  BlockStructure blocks;
};

/// k = n/m uniform random column-to-symbol permutations define the blocks
/// (block j*k + t sits in column j with symbol perm_t(j)); each column's rows
/// are then shuffled and cut into k runs of m rows.
BlockSquare block_structured_square(int n, int m, std::uint64_t seed);

/// grid[i][j] = (i + j) mod n.
EquiNSquare cyclic_latin(int n);

}  // namespace equi
