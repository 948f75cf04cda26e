#include "equi/constructions.hpp"

#include <algorithm>
#include <numeric>

#include "equi/rng.hpp"

namespace equi {

int BoxPairing::box_colour(int box_row, int box_col) const {
  for (const auto& p : pairs) {
    if ((p.row1 == box_row && p.col1 == box_col) || (p.row2 == box_row && p.col2 == box_col)) {
      return p.colour;
    }
  }
  return -1;
}

Counterexample counterexample_square(int n) {
  if (n < 8) {
    throw ConstructionError(ConstructionError::Kind::TooSmall,
                            "TooSmall(" + std::to_string(n) + ")");
  }
  BoxPairing p;
  p.n = n;
  // m = ceil(sqrt(n/2)) and r = ceil(sqrt(m^2 - n/2)), in integers
  long long m = 0;
  while (2 * m * m < n) ++m;
  long long r = 0;
  while (2 * r * r < 2 * m * m - n) ++r;
  p.m = static_cast<int>(m);
  p.r = static_cast<int>(r);
  p.a = p.m + p.r;
  p.b = p.m - p.r;
  const int a = p.a;
  const int b = p.b;

  int colour = 0;
  for (int k = 0; k < b; ++k) p.pairs.push_back({2 * k, 2 * k, 2 * k + 1, 2 * k + 1, colour++});
  for (int i = 0; i < 2 * b; ++i) {
    for (int j = i + 1; j < 2 * b; ++j) p.pairs.push_back({i, j, j, i, colour++});
  }
  for (int s = b; s < a; ++s) {
    for (int t = 0; t < 2 * b; ++t) p.pairs.push_back({2 * s, t, 2 * s + 1, t, colour++});
  }

  std::vector<int> grid(static_cast<std::size_t>(n) * n, -1);
  auto paint_box = [&](int bi, int bj, int c) {
    for (int x = bi * b; x < (bi + 1) * b; ++x) {
      for (int y = bj * a; y < (bj + 1) * a; ++y) grid[static_cast<std::size_t>(x) * n + y] = c;
    }
  };
  for (const auto& pair : p.pairs) {
    paint_box(pair.row1, pair.col1, pair.colour);
    paint_box(pair.row2, pair.col2, pair.colour);
  }

  // deficit queue: colours by id, each repeated by its remaining deficit
  const int boxed = 2 * a * b;
  std::vector<int> deficit(n);
  for (int c = 0; c < n; ++c) deficit[c] = c < static_cast<int>(p.pairs.size()) ? n - boxed : n;
  int next = 0;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (x < boxed && y < boxed) continue;
      while (deficit[next] == 0) ++next;
      --deficit[next];
      grid[static_cast<std::size_t>(x) * n + y] = next;
      p.leftover_fill.push_back({{x, y}, next});
    }
  }
  return {validate_square(n, std::move(grid)), std::move(p)};
}

CertificateReport audit_missing_colours(const EquiNSquare& square, const BoxPairing& pairing,
                                        const Transversal& transversal) {
  const int n = square.order();
  if (pairing.n != n) {
    throw ConstructionError(ConstructionError::Kind::InvalidParam,
                            "pairing was built for a different order");
  }
  const int a = pairing.a;
  const int b = pairing.b;
  const int side = pairing.boxed_side();

  std::vector<int> colour_of_box(static_cast<std::size_t>(2 * a) * 2 * b, -1);
  for (const auto& p : pairing.pairs) {
    colour_of_box[static_cast<std::size_t>(p.row1) * 2 * b + p.col1] = p.colour;
    colour_of_box[static_cast<std::size_t>(p.row2) * 2 * b + p.col2] = p.colour;
  }

  CertificateReport report;
  report.transversal_size = static_cast<int>(transversal.size());
  report.implied_bound = pairing.implied_bound();
  std::vector<char> used(n, 0);
  for (const Cell& c : transversal) {
    if (c.row < side && c.col < side) {
      used[square.at(c)] = 1;
      ++report.boxed_size;
    }
  }

  for (int k = 0; k < b; ++k) {
    std::vector<char> in_band(n, 0);
    for (int band : {2 * k, 2 * k + 1}) {
      for (int i = 0; i < 2 * a; ++i) in_band[colour_of_box[static_cast<std::size_t>(i) * 2 * b + band]] = 1;
      for (int j = 0; j < 2 * b; ++j) in_band[colour_of_box[static_cast<std::size_t>(band) * 2 * b + j]] = 1;
    }
    std::vector<int> missing;
    for (int c = 0; c < n; ++c) {
      if (in_band[c] && !used[c]) missing.push_back(c);
    }
    if (missing.empty()) report.violations.push_back(k);
    report.missing.push_back(std::move(missing));
  }
  return report;
}

CertificateReport missing_colour_certificate(const EquiNSquare& square, const BoxPairing& pairing,
                                             const Transversal& transversal) {
  auto report = audit_missing_colours(square, pairing, transversal);
  if (!report.violations.empty()) {
    throw ConstructionError(ConstructionError::Kind::CertificateViolation,
                            "CertificateViolation(" + std::to_string(report.violations.front()) + ")");
  }
  return report;
}

EquiNSquare random_equi_square(int n, std::uint64_t seed) {
  if (n < 1) throw ConstructionError(ConstructionError::Kind::InvalidParam, "n must be >= 1");
  std::vector<int> grid(static_cast<std::size_t>(n) * n);
  for (std::size_t i = 0; i < grid.size(); ++i) grid[i] = static_cast<int>(i / n);
  auto rng = SeedStreams(seed).stream("random_equi_square");
  std::shuffle(grid.begin(), grid.end(), rng);
  return validate_square(n, std::move(grid));
}

void validate_blocks(const EquiNSquare& square, BlockStructure& bs) {
  const int n = square.order();
  auto fail = [](const std::string& why) {
    return ConstructionError(ConstructionError::Kind::BlockMismatch, "BlockMismatch(" + why + ")");
  };
  if (bs.n != n) throw fail("order differs from square");
  if (bs.m < 1 || n % bs.m != 0) throw fail("block size does not divide n");
  bs.block_of_cell.assign(static_cast<std::size_t>(n) * n, -1);
  for (std::size_t id = 0; id < bs.blocks.size(); ++id) {
    const Block& blk = bs.blocks[id];
    if (static_cast<int>(blk.rows.size()) != bs.m) throw fail("block " + std::to_string(id) + " has wrong size");
    if (blk.col < 0 || blk.col >= n) throw fail("block " + std::to_string(id) + " column out of range");
    for (int row : blk.rows) {
      if (row < 0 || row >= n) throw fail("block " + std::to_string(id) + " row out of range");
      auto& slot = bs.block_of_cell[static_cast<std::size_t>(row) * n + blk.col];
      if (slot >= 0) throw fail("cell " + to_string(Cell{row, blk.col}) + " in two blocks");
      if (square.at(row, blk.col) != blk.symbol) {
        throw fail("block " + std::to_string(id) + " is not monochromatic");
      }
      slot = static_cast<int>(id);
    }
  }
  if (std::find(bs.block_of_cell.begin(), bs.block_of_cell.end(), -1) != bs.block_of_cell.end()) {
    throw fail("blocks do not cover every cell");
  }
}

BlockSquare block_structured_square(int n, int m, std::uint64_t seed) {
  if (n < 1 || m < 1) throw ConstructionError(ConstructionError::Kind::InvalidParam, "n, m must be >= 1");
  if (n % m != 0) {
    throw ConstructionError(ConstructionError::Kind::NotDivisible,
                            "NotDivisible(" + std::to_string(n) + "," + std::to_string(m) + ")");
  }
  const int k = n / m;
  const SeedStreams streams(seed);
  auto perm_rng = streams.stream("block.matchings");
  auto row_rng = streams.stream("block.rows");

  std::vector<std::vector<int>> perms(k, std::vector<int>(n));
  for (auto& perm : perms) {
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), perm_rng);
  }

  BlockStructure bs;
  bs.n = n;
  bs.m = m;
  bs.blocks.resize(static_cast<std::size_t>(n) * k);
  std::vector<int> grid(static_cast<std::size_t>(n) * n);
  std::vector<int> rows(n);
  for (int col = 0; col < n; ++col) {
    std::iota(rows.begin(), rows.end(), 0);
    std::shuffle(rows.begin(), rows.end(), row_rng);
    for (int t = 0; t < k; ++t) {
      Block& blk = bs.blocks[static_cast<std::size_t>(col) * k + t];
      blk.col = col;
      blk.symbol = perms[t][col];
      blk.rows.assign(rows.begin() + t * m, rows.begin() + (t + 1) * m);
      std::sort(blk.rows.begin(), blk.rows.end());
      for (int row : blk.rows) grid[static_cast<std::size_t>(row) * n + col] = blk.symbol;
    }
  }
  BlockSquare out{validate_square(n, std::move(grid)), std::move(bs)};
  validate_blocks(out.square, out.blocks);
  return out;
}

EquiNSquare cyclic_latin(int n) {
  if (n < 1) throw ConstructionError(ConstructionError::Kind::InvalidParam, "n must be >= 1");
  std::vector<int> grid(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) grid[static_cast<std::size_t>(i) * n + j] = (i + j) % n;
  }
  return validate_square(n, std::move(grid));
}

}  // namespace equi
