#include "equi/solvers.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>

namespace equi {

namespace {

bool allowed_cell(const CellMask& allowed, int n, int row, int col) {
  return allowed.empty() || allowed[static_cast<std::size_t>(row) * n + col];
}

void check_mask(const CellMask& allowed, int n) {
  if (!allowed.empty() && allowed.size() != static_cast<std::size_t>(n) * n) {
    throw SolverError(SolverError::Kind::InvalidParam, "cell mask must have n*n entries");
  }
}

// Fixed-width bitset over [0, 64 * W).
template <int W>
struct Bits {
  std::array<std::uint64_t, W> w{};

  void set(int i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(int i) { w[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  bool test(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  int count() const {
    int c = 0;
    for (auto x : w) c += std::popcount(x);
    return c;
  }
  Bits without(const Bits& o) const {
    Bits r;
    for (int k = 0; k < W; ++k) r.w[k] = w[k] & ~o.w[k];
    return r;
  }
  template <class F>
  bool for_each(F&& f) const {  // stops early when f returns true
    for (int k = 0; k < W; ++k) {
      for (std::uint64_t x = w[k]; x; x &= x - 1) {
        if (f(k * 64 + std::countr_zero(x))) return true;
      }
    }
    return false;
  }
};

template <int W>
class ExactSearch {
public:
  ExactSearch(const EquiNSquare& square, std::uint64_t budget)
      : square_(square), n_(square.order()), budget_(budget), decided_(n_, 0) {
    for (int i = 0; i < n_; ++i) {
      free_cols_.set(i);
      free_syms_.set(i);
    }
  }

  ExactResult run() {
    node(n_);
    ExactResult r;
    r.transversal = validate_transversal(square_, best_);
    r.optimal = !aborted_;
    r.nodes = nodes_;
    return r;
  }

private:
  struct RowOptions {
    int row;
    Bits<W> cols;
    Bits<W> syms;
    int count;
  };

  // size of a maximum matching between the given rows and their option sets
  template <class Select>
  int relaxation(const std::vector<RowOptions>& rows, Select select) const {
    std::vector<int> owner(n_, -1);
    int size = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Bits<W> seen;
      if (augment(rows, select, static_cast<int>(i), seen, owner)) ++size;
    }
    return size;
  }

  template <class Select>
  bool augment(const std::vector<RowOptions>& rows, Select select, int i, Bits<W>& seen,
               std::vector<int>& owner) const {
    return select(rows[i]).without(seen).for_each([&](int v) {
      seen.set(v);
      if (owner[v] < 0 || augment(rows, select, owner[v], seen, owner)) {
        owner[v] = i;
        return true;
      }
      return false;
    });
  }

  void node(int undecided) {
    if (aborted_) return;
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    const int cur = static_cast<int>(current_.size());
    if (cur > static_cast<int>(best_.size())) best_ = current_;
    const int best = static_cast<int>(best_.size());
    if (cur + undecided <= best) return;

    std::vector<RowOptions> live;
    for (int r = 0; r < n_; ++r) {
      if (decided_[r]) continue;
      RowOptions ro{r, {}, {}, 0};
      free_cols_.for_each([&](int c) {
        const int s = square_.at(r, c);
        if (free_syms_.test(s)) {
          ro.cols.set(c);
          ro.syms.set(s);
          ++ro.count;
        }
        return false;
      });
      if (ro.count) live.push_back(ro);
    }
    if (live.empty()) return;
    const int n_live = static_cast<int>(live.size());
    if (cur + n_live <= best) return;
    if (cur + relaxation(live, [](const RowOptions& o) -> const Bits<W>& { return o.cols; }) <= best) return;
    if (cur + relaxation(live, [](const RowOptions& o) -> const Bits<W>& { return o.syms; }) <= best) return;

    const auto pick = *std::min_element(live.begin(), live.end(), [](const auto& x, const auto& y) {
      return x.count < y.count;
    });
    const int r = pick.row;
    decided_[r] = 1;
    pick.cols.for_each([&](int c) {
      const int s = square_.at(r, c);
      free_cols_.reset(c);
      free_syms_.reset(s);
      current_.push_back({r, c});
      node(undecided - 1);
      current_.pop_back();
      free_cols_.set(c);
      free_syms_.set(s);
      return aborted_;
    });
    if (!aborted_) node(undecided - 1);  // row r left empty
    decided_[r] = 0;
  }

  const EquiNSquare& square_;
  int n_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
  std::vector<char> decided_;
  Bits<W> free_cols_;
  Bits<W> free_syms_;
  std::vector<Cell> current_;
  std::vector<Cell> best_;
};

// Occupancy of a transversal under construction.
class Occupancy {
public:
  Occupancy(const EquiNSquare& square)
      : square_(square),
        n_(square.order()),
        col_of_row_(n_, -1),
        row_used_(n_, 0),
        col_used_(n_, 0),
        sym_used_(n_, 0) {}

  bool admissible(int row, int col) const {
    return !row_used_[row] && !col_used_[col] && !sym_used_[square_.at(row, col)];
  }
  void add(const Cell& c) {
    col_of_row_[c.row] = c.col;
    row_used_[c.row] = col_used_[c.col] = sym_used_[square_.at(c)] = 1;
    ++size_;
  }
  void remove(const Cell& c) {
    col_of_row_[c.row] = -1;
    row_used_[c.row] = col_used_[c.col] = sym_used_[square_.at(c)] = 0;
    --size_;
  }
  int size() const { return size_; }
  bool row_used(int r) const { return row_used_[r]; }
  bool col_used(int c) const { return col_used_[c]; }
  std::vector<Cell> cells() const {
    std::vector<Cell> out;
    for (int r = 0; r < n_; ++r) {
      if (col_of_row_[r] >= 0) out.push_back({r, col_of_row_[r]});
    }
    return out;
  }

private:
  const EquiNSquare& square_;
  int n_;
  std::vector<int> col_of_row_;
  std::vector<char> row_used_, col_used_, sym_used_;
  int size_ = 0;
};

}  // namespace

BruteForceResult brute_force_max(const EquiNSquare& square) {
  const int n = square.order();
  if (n > 7) throw SolverError(SolverError::Kind::TooLarge, "TooLarge(" + std::to_string(n) + ")");
  std::vector<char> col_used(n, 0), sym_used(n, 0);
  std::vector<Cell> current, best;
  // every row is either skipped or sent to a free column with a free symbol
  auto rec = [&](auto&& self, int row) -> void {
    if (row == n) {
      if (current.size() > best.size()) best = current;
      return;
    }
    self(self, row + 1);
    for (int c = 0; c < n; ++c) {
      const int s = square.at(row, c);
      if (col_used[c] || sym_used[s]) continue;
      col_used[c] = sym_used[s] = 1;
      current.push_back({row, c});
      self(self, row + 1);
      current.pop_back();
      col_used[c] = sym_used[s] = 0;
    }
  };
  rec(rec, 0);
  return {static_cast<int>(best.size()), validate_transversal(square, best)};
}

ExactResult exact_max(const EquiNSquare& square, std::uint64_t node_budget) {
  const int n = square.order();
  if (n <= 64) return ExactSearch<1>(square, node_budget).run();
  if (n <= 128) return ExactSearch<2>(square, node_budget).run();
  if (n <= 256) return ExactSearch<4>(square, node_budget).run();
  if (n <= 512) return ExactSearch<8>(square, node_budget).run();
  if (n <= 1024) return ExactSearch<16>(square, node_budget).run();
  throw SolverError(SolverError::Kind::TooLarge, "TooLarge(" + std::to_string(n) + ")");
}

Transversal random_greedy(const EquiNSquare& square, Rng& rng, const CellMask& allowed) {
  const int n = square.order();
  check_mask(allowed, n);
  std::vector<int> order(static_cast<std::size_t>(n) * n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  Occupancy occ(square);
  for (int idx : order) {
    const int r = idx / n;
    const int c = idx % n;
    if (allowed_cell(allowed, n, r, c) && occ.admissible(r, c)) occ.add({r, c});
  }
  const auto cells = occ.cells();
  return validate_transversal(square, cells);
}

Transversal local_search(const EquiNSquare& square, const Transversal& start, Rng& rng,
                         int iterations, const CellMask& allowed) {
  const int n = square.order();
  check_mask(allowed, n);
  std::vector<std::vector<Cell>> cells_of_symbol(n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) {
      if (allowed_cell(allowed, n, r, c)) cells_of_symbol[square.at(r, c)].push_back({r, c});
    }
  }

  Occupancy occ(square);
  std::vector<Cell> current(start.begin(), start.end());
  for (const Cell& c : current) occ.add(c);
  // complete to a maximal transversal first
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n && !occ.row_used(r); ++c) {
      if (allowed_cell(allowed, n, r, c) && occ.admissible(r, c)) {
        occ.add({r, c});
        current.push_back({r, c});
      }
    }
  }
  std::vector<Cell> best = current;

  std::vector<int> cell_order(static_cast<std::size_t>(n) * n);
  std::iota(cell_order.begin(), cell_order.end(), 0);
  int stale = 0;
  std::vector<Cell> candidates;
  for (int it = 0; it < iterations && !current.empty() && static_cast<int>(best.size()) < n; ++it) {
    const std::size_t xi = std::uniform_int_distribution<std::size_t>(0, current.size() - 1)(rng);
    const Cell x = current[xi];
    occ.remove(x);
    current[xi] = current.back();
    current.pop_back();

    // cells that became admissible share x's row, column or symbol
    candidates.clear();
    auto consider = [&](int r, int c) {
      if ((r != x.row || c != x.col) && allowed_cell(allowed, n, r, c) && occ.admissible(r, c)) {
        candidates.push_back({r, c});
      }
    };
    for (int c = 0; c < n; ++c) consider(x.row, c);
    for (int r = 0; r < n; ++r) {
      if (r != x.row) consider(r, x.col);
    }
    for (const Cell& c : cells_of_symbol[square.at(x)]) {
      if (c.row != x.row && c.col != x.col) consider(c.row, c.col);
    }

    bool improved = false;
    for (std::size_t i = 0; i < candidates.size() && !improved; ++i) {
      for (std::size_t j = i + 1; j < candidates.size(); ++j) {
        const Cell p = candidates[i];
        const Cell q = candidates[j];
        if (p.row != q.row && p.col != q.col && square.at(p) != square.at(q)) {
          occ.add(p);
          occ.add(q);
          current.push_back(p);
          current.push_back(q);
          improved = true;
          break;
        }
      }
    }
    if (!improved) {
      Cell back = x;
      if (!candidates.empty()) {
        back = candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
      }
      occ.add(back);
      current.push_back(back);
    }
    if (current.size() > best.size()) {
      best = current;
      stale = 0;
    } else if (++stale >= n && current.size() >= 2) {
      // Latin-like squares freeze on tiny plateaus: drop two cells and refill
      for (int drop = 0; drop < 2; ++drop) {
        const std::size_t di = std::uniform_int_distribution<std::size_t>(0, current.size() - 1)(rng);
        occ.remove(current[di]);
        current[di] = current.back();
        current.pop_back();
      }
      std::shuffle(cell_order.begin(), cell_order.end(), rng);
      for (int idx : cell_order) {
        const int r = idx / n, c = idx % n;
        if (allowed_cell(allowed, n, r, c) && occ.admissible(r, c)) {
          occ.add({r, c});
          current.push_back({r, c});
        }
      }
      if (current.size() > best.size()) best = current;
      stale = 0;
    }
  }
  return validate_transversal(square, best);
}

std::vector<Transversal> peel_decomposition(const EquiNSquare& square, Rng& rng, int min_size,
                                            const PeelOptions& options) {
  const int n = square.order();
  if (min_size < 1 || min_size > n) {
    throw SolverError(SolverError::Kind::InvalidParam, "min_size must lie in [1, n]");
  }
  CellMask allowed(static_cast<std::size_t>(n) * n, 1);
  std::vector<Transversal> layers;
  for (;;) {
    bool found = false;
    for (int attempt = 0; attempt < options.attempts && !found; ++attempt) {
      Transversal t = random_greedy(square, rng, allowed);
      t = local_search(square, t, rng, options.iterations_per_cell * n, allowed);
      if (static_cast<int>(t.size()) >= min_size) {
        for (const Cell& c : t) allowed[static_cast<std::size_t>(c.row) * n + c.col] = 0;
        layers.push_back(std::move(t));
        found = true;
      }
    }
    if (!found) break;
  }
  return layers;
}

}  // namespace equi
