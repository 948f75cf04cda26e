#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "equi/bipartite.hpp"
#include "equi/constructions.hpp"
#include "equi/rng.hpp"
#include "equi/square.hpp"

namespace equi {

class HalvingError : public Error {
public:
  enum class Kind { InvalidParam, NotPowerOfTwo, BadLevel };

  HalvingError(Kind kind, std::string what) : Error(std::move(what)), kind_(kind) {}
  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

/// One random halving of a pair of matchings.
struct PairTrace {
  Matching input_a;
  Matching input_b;
  CapResult cap;
  /// flips[j] is the coin of cap.components.components[j]: 0 keeps its
  /// input_a edges, 1 keeps its input_b edges.
  std::vector<std::uint8_t> flips;
  Matching output;
};

struct LevelTrace {
  int level = 0;  // 1-based
  std::vector<PairTrace> pairs;
};

struct HalvingTrace {
  std::uint64_t rng_seed = 0;
  int cap = 0;
  std::vector<Matching> inputs;
  std::vector<LevelTrace> levels;

  int depth() const { return static_cast<int>(levels.size()); }
  /// Matchings present after `level` rounds (0 = inputs).
  std::vector<Matching> matchings_at(int level) const;
  const Matching& result() const;
};

/// Splits the union of two matchings into components of length at most s,
/// flips one fair coin per component, and keeps that component's A-edges on
/// 0 and its B-edges on 1.
std::pair<Matching, PairTrace> alternate_halve(const BipartiteMultigraph& g, std::span<const int> ma,
                                               std::span<const int> mb, int s, Rng& rng);

/// Runs log2(count) rounds of alternate_halve, pairing matchings 2i and 2i+1
/// in each round. Coins come from SeedStreams(seed).stream("halving").
std::pair<Matching, HalvingTrace> iterated_halving(const BipartiteMultigraph& g,
                                                   const std::vector<Matching>& matchings, int s,
                                                   std::uint64_t seed);

/// loads[i] = number of blocks of a matching with a cell in row i.
struct RowLoads {
  std::vector<int> loads;

  long long total() const;
};

/// Column-by-symbol multigraph with one edge per block, labelled by block id.
BipartiteMultigraph block_multigraph(const BlockStructure& blocks);

struct BlockTransversalResult {
  Transversal transversal;
  HalvingTrace trace;
  RowLoads loads;  // final level
};

/// max(4, floor(n^(1/3) / ln^2 n)).
int default_cap(int n);

/// Decomposes the block multigraph into k = n/m matchings, halves them down to
/// one matching M, and returns a maximum matching of the row-column graph
/// restricted to the blocks of M. The result is validated before return.
BlockTransversalResult block_transversal(const EquiNSquare& square, BlockStructure blocks, int s,
                                         std::uint64_t seed);

/// Row loads of every matching present after `level` rounds.
std::vector<RowLoads> row_loads(const HalvingTrace& trace, const BlockStructure& blocks, int level);
RowLoads row_loads(const BlockStructure& blocks, std::span<const int> matching);

/// 2 exp(-t^2 / sum c_i^2), capped at 1.
double mcdiarmid_bound(std::span<const double> c, double t);

}  // namespace equi
