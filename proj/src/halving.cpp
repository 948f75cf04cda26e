#include "equi/halving.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace equi {

std::vector<Matching> HalvingTrace::matchings_at(int level) const {
  if (level < 0 || level > depth()) {
    throw HalvingError(HalvingError::Kind::BadLevel, "BadLevel(" + std::to_string(level) + ")");
  }
  if (level == 0) return inputs;
  std::vector<Matching> out;
  for (const auto& p : levels[level - 1].pairs) out.push_back(p.output);
  return out;
}

const Matching& HalvingTrace::result() const {
  if (levels.empty()) return inputs.front();
  return levels.back().pairs.front().output;
}

std::pair<Matching, PairTrace> alternate_halve(const BipartiteMultigraph& g, std::span<const int> ma,
                                               std::span<const int> mb, int s, Rng& rng) {
  if (s < 1) throw HalvingError(HalvingError::Kind::InvalidParam, "cap s must be >= 1");
  PairTrace trace;
  trace.input_a.assign(ma.begin(), ma.end());
  trace.input_b.assign(mb.begin(), mb.end());
  trace.cap = cap_components(union_components(g, ma, mb), s);

  Matching out;
  for (const auto& comp : trace.cap.components.components) {
    const auto flip = static_cast<std::uint8_t>(rng() >> 63);
    trace.flips.push_back(flip);
    const Side keep = flip ? Side::B : Side::A;
    for (std::size_t i = 0; i < comp.labels.size(); ++i) {
      if (comp.sides[i] == keep) out.push_back(comp.labels[i]);
    }
  }
  std::sort(out.begin(), out.end());
  trace.output = out;
  return {std::move(out), std::move(trace)};
}

std::pair<Matching, HalvingTrace> iterated_halving(const BipartiteMultigraph& g,
                                                   const std::vector<Matching>& matchings, int s,
                                                   std::uint64_t seed) {
  if (matchings.empty() || !std::has_single_bit(matchings.size())) {
    throw HalvingError(HalvingError::Kind::NotPowerOfTwo,
                       "NotPowerOfTwo(" + std::to_string(matchings.size()) + ")");
  }
  for (const auto& m : matchings) check_matching(g, m);

  HalvingTrace trace;
  trace.rng_seed = seed;
  trace.cap = s;
  trace.inputs = matchings;
  auto rng = SeedStreams(seed).stream("halving");

  std::vector<Matching> current = matchings;
  int level = 0;
  while (current.size() > 1) {
    LevelTrace lt;
    lt.level = ++level;
    std::vector<Matching> next;
    for (std::size_t i = 0; i + 1 < current.size(); i += 2) {
      auto [m, pt] = alternate_halve(g, current[i], current[i + 1], s, rng);
      next.push_back(std::move(m));
      lt.pairs.push_back(std::move(pt));
    }
    trace.levels.push_back(std::move(lt));
    current = std::move(next);
  }
  return {std::move(current.front()), std::move(trace)};
}

long long RowLoads::total() const {
  long long t = 0;
  for (int v : loads) t += v;
  return t;
}

BipartiteMultigraph block_multigraph(const BlockStructure& blocks) {
  BipartiteMultigraph k(blocks.n, blocks.n);
  for (std::size_t id = 0; id < blocks.blocks.size(); ++id) {
    k.add_edge(blocks.blocks[id].col, blocks.blocks[id].symbol, static_cast<int>(id));
  }
  return k;
}

int default_cap(int n) {
  if (n < 3) return 4;
  const double ln = std::log(static_cast<double>(n));
  const double raw = std::cbrt(static_cast<double>(n)) / (ln * ln);
  return std::max(4, static_cast<int>(std::floor(raw)));
}

RowLoads row_loads(const BlockStructure& blocks, std::span<const int> matching) {
  RowLoads out;
  out.loads.assign(blocks.n, 0);
  for (int id : matching) {
    // a block lies in one column, so it meets each of its rows exactly once
    for (int row : blocks.blocks.at(id).rows) ++out.loads[row];
  }
  return out;
}

std::vector<RowLoads> row_loads(const HalvingTrace& trace, const BlockStructure& blocks, int level) {
  std::vector<RowLoads> out;
  for (const auto& m : trace.matchings_at(level)) out.push_back(row_loads(blocks, m));
  return out;
}

BlockTransversalResult block_transversal(const EquiNSquare& square, BlockStructure blocks, int s,
                                         std::uint64_t seed) {
  validate_blocks(square, blocks);
  const int n = square.order();
  const int k = blocks.blocks_per_column();
  if (!std::has_single_bit(static_cast<unsigned>(k))) {
    throw HalvingError(HalvingError::Kind::NotPowerOfTwo,
                       "NotPowerOfTwo(k = " + std::to_string(k) + ")");
  }
  const auto graph = block_multigraph(blocks);
  auto [matching, trace] = iterated_halving(graph, decompose_regular(graph, k), s, seed);

  // rows x columns, an edge (i, j) for every cell of a selected block
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (int id : matching) {
    const Block& blk = blocks.blocks[id];
    for (int row : blk.rows) adj[row].emplace_back(blk.col, row * n + blk.col);
  }
  const auto match = detail::hopcroft_karp(n, n, adj);
  std::vector<Cell> cells;
  for (int row = 0; row < n; ++row) {
    if (match[row] >= 0) cells.push_back({row, match[row] % n});
  }
  BlockTransversalResult result{validate_transversal(square, cells), std::move(trace), {}};
  result.loads = row_loads(blocks, matching);
  return result;
}

double mcdiarmid_bound(std::span<const double> c, double t) {
  if (!(t > 0)) throw HalvingError(HalvingError::Kind::InvalidParam, "InvalidParam(t <= 0)");
  double sum = 0;
  for (double ci : c) {
    if (!(ci >= 0)) throw HalvingError(HalvingError::Kind::InvalidParam, "InvalidParam(c_i < 0)");
    sum += ci * ci;
  }
  if (!(sum > 0)) throw HalvingError(HalvingError::Kind::InvalidParam, "InvalidParam(sum c_i^2 = 0)");
  return std::min(1.0, 2.0 * std::exp(-t * t / sum));
}

}  // namespace equi
