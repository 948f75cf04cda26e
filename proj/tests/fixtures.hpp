#pragma once

// Independent oracles and instance builders shared by the unit and acceptance tests.

#include <algorithm>
#include <set>
#include <utility>
#include <vector>

#include "equi/bipartite.hpp"
#include "equi/hypergraph.hpp"
#include "equi/rng.hpp"

namespace fixtures {

/// Largest set of pairwise vertex-disjoint edges, by plain include/exclude
/// recursion over the edge list.
inline int hyper_matching_oracle(const equi::TripartiteHypergraph& h) {
  const auto edges = h.edges();
  std::vector<std::vector<char>> used(3);
  for (int c = 0; c < 3; ++c) used[c].assign(h.class_sizes()[c], 0);
  int best = 0;
  auto rec = [&](auto&& self, std::size_t i, int size) -> void {
    if (size + static_cast<int>(edges.size() - i) <= best) return;
    if (i == edges.size()) {
      best = size;
      return;
    }
    const auto& e = edges[i];
    if (!used[0][e.a] && !used[1][e.b] && !used[2][e.c]) {
      used[0][e.a] = used[1][e.b] = used[2][e.c] = 1;
      self(self, i + 1, size + 1);
      used[0][e.a] = used[1][e.b] = used[2][e.c] = 0;
    }
    self(self, i + 1, size);
  };
  rec(rec, 0, 0);
  return best;
}

/// König: maximum matching size equals minimum vertex cover size. Tries
/// every subset of left vertices; the right vertices left uncovered are forced.
inline int min_vertex_cover(const equi::BipartiteMultigraph& g) {
  int best = g.left_size() + g.right_size();
  for (int mask = 0; mask < (1 << g.left_size()); ++mask) {
    std::set<int> right;
    for (const auto& e : g.edges()) {
      if (!(mask >> e.left & 1)) right.insert(e.right);
    }
    best = std::min(best, __builtin_popcount(mask) + static_cast<int>(right.size()));
  }
  return best;
}

struct Planted {
  equi::TripartiteHypergraph h;
  std::vector<std::pair<int, int>> pairs;  // (A index, B index) with codegree > 1
};

/// Random hypergraph with every codegree at most 1, plus a planted matching of
/// A-B pairs of codegree 2..4 whose A vertices appear nowhere else.
inline Planted planted_codegree(std::uint64_t seed, int size = 12, int background = 40, int planted = 3) {
  equi::Rng rng(seed);
  Planted p;
  p.h = equi::TripartiteHypergraph(size + planted, size + planted, size);
  std::set<std::pair<int, int>> ab, ac, bc;
  auto fits = [&](int a, int b, int c) { return !ab.count({a, b}) && !ac.count({a, c}) && !bc.count({b, c}); };
  auto put = [&](int a, int b, int c) {
    ab.insert({a, b});
    ac.insert({a, c});
    bc.insert({b, c});
    p.h.add_edge({a, b, c});
  };
  std::uniform_int_distribution<int> pick(0, size - 1);
  for (int tries = 0, made = 0; made < background && tries < 100 * background; ++tries) {
    const int a = pick(rng), b = pick(rng), c = pick(rng);
    if (fits(a, b, c)) {
      put(a, b, c);
      ++made;
    }
  }
  for (int i = 0; i < planted; ++i) {
    // fresh A and B vertices keep the pairs a matching and separated
    const int a = size + i, b = size + i;
    const int copies = 2 + static_cast<int>(rng() % 3);
    int made = 0;
    for (int c = 0; c < size && made < copies; ++c) {
      if (!bc.count({b, c})) {
        p.h.add_edge({a, b, c});
        bc.insert({b, c});
        ++made;
      }
    }
    p.pairs.push_back({a, b});
  }
  return p;
}

}  // namespace fixtures
