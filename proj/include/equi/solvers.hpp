#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "equi/rng.hpp"
#include "equi/square.hpp"

namespace equi {

class SolverError : public Error {
public:
  enum class Kind { TooLarge, InvalidParam };

  SolverError(Kind kind, std::string what) : Error(std::move(what)), kind_(kind) {}
  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

/// Cells a solver may use; empty means every cell.
using CellMask = std::vector<char>;

struct BruteForceResult {
  int size = 0;
  Transversal transversal;
};

/// Exhaustive enumeration of every partial row-to-column injection with
/// distinct symbols. Limited to n <= 7.
BruteForceResult brute_force_max(const EquiNSquare& square);

struct ExactResult {
  Transversal transversal;
  bool optimal = false;
  std::uint64_t nodes = 0;
};

/// Depth-first branch and bound over rows, most constrained row first. A node
/// is cut when the incumbent reaches the smaller of two matching relaxations
/// (rows vs free columns, rows vs free symbols). Budget counts search nodes.
/// Supports n <= 1024.
ExactResult exact_max(const EquiNSquare& square, std::uint64_t node_budget);

/// Scans cells in random order and keeps every cell whose row, column and
/// symbol are still unused.
Transversal random_greedy(const EquiNSquare& square, Rng& rng, const CellMask& allowed = {});

/// 1-out-2-in improvement with sideways moves, plus a two-cell kick and random
/// refill after n steps without progress. Never returns a smaller transversal
/// than it was given.
Transversal local_search(const EquiNSquare& square, const Transversal& start, Rng& rng,
                         int iterations, const CellMask& allowed = {});

struct PeelOptions {
  int attempts = 4;              // greedy + local search restarts per layer
  int iterations_per_cell = 40;  // local search iterations = this * n
};

/// Repeatedly extracts a transversal of size >= min_size from the cells not
/// used so far; stops at the first layer where every attempt falls short.
std::vector<Transversal> peel_decomposition(const EquiNSquare& square, Rng& rng, int min_size,
                                            const PeelOptions& options = {});

}  // namespace equi
