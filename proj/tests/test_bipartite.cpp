#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "equi/bipartite.hpp"
#include "equi/constructions.hpp"
#include "equi/halving.hpp"
#include "fixtures.hpp"

using namespace equi;

namespace {

BipartiteMultigraph random_regular(int size, int k, Rng& rng) {
  BipartiteMultigraph g(size, size);
  std::vector<int> perm(size);
  int label = 0;
  for (int t = 0; t < k; ++t) {
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int i = 0; i < size; ++i) g.add_edge(i, perm[i], label++);
  }
  return g;
}

// 2n-cycle 0-0-1-1-...: left i joins right i (label 2i) and right i+1 (label 2i+1)
BipartiteMultigraph cycle_graph(int n) {
  BipartiteMultigraph g(n, n);
  for (int i = 0; i < n; ++i) {
    g.add_edge(i, i, 2 * i);
    g.add_edge(i, (i + 1) % n, 2 * i + 1);
  }
  return g;
}

Matching evens(int n) {
  Matching m;
  for (int i = 0; i < n; ++i) m.push_back(2 * i);
  return m;
}

Matching odds(int n) {
  Matching m;
  for (int i = 0; i < n; ++i) m.push_back(2 * i + 1);
  return m;
}

void check_perfect(const BipartiteMultigraph& g, const Matching& m) {
  CHECK_NOTHROW(check_matching(g, m));
  CHECK(static_cast<int>(m.size()) == g.left_size());
}

}  // namespace

TEST_CASE("graph bookkeeping") {
  BipartiteMultigraph g(2, 2);
  g.add_edge(0, 1, 7);
  g.add_edge(0, 1, 9);
  CHECK(g.has_label(7));
  CHECK(g.edge(9).right == 1);
  CHECK(g.left_degrees() == std::vector<int>{2, 0});
  CHECK_THROWS_AS(g.add_edge(1, 1, 7), GraphError);
  CHECK_THROWS_AS(g.add_edge(2, 0, 11), GraphError);
  CHECK_THROWS_AS(check_matching(g, std::vector<int>{7, 9}), GraphError);
  CHECK_THROWS_AS(check_matching(g, std::vector<int>{5}), GraphError);
}

TEST_CASE("regular_perfect_matching") {
  BipartiteMultigraph one(3, 3);
  one.add_edge(0, 2, 0);
  one.add_edge(1, 0, 1);
  one.add_edge(2, 1, 2);
  CHECK(regular_perfect_matching(one, 1) == Matching{0, 1, 2});

  const auto cyc = cycle_graph(4);
  const auto m = regular_perfect_matching(cyc, 2);
  CHECK((m == evens(4) || m == odds(4)));

  Rng rng(3);
  for (int rep = 0; rep < 5; ++rep) {
    const auto g = random_regular(50, 8, rng);
    check_perfect(g, regular_perfect_matching(g, 8));
  }

  BipartiteMultigraph uneven(2, 2);
  uneven.add_edge(0, 0, 0);
  uneven.add_edge(0, 1, 1);
  uneven.add_edge(1, 1, 2);
  try {
    regular_perfect_matching(uneven, 1);
    FAIL("accepted");
  } catch (const GraphError& e) {
    CHECK(e.kind() == GraphError::Kind::NotRegular);
  }
}

TEST_CASE("decompose_regular partitions the edges") {
  Rng rng(8);
  for (int k : {1, 2, 3, 4, 8}) {
    const auto g = random_regular(40, k, rng);
    const auto parts = decompose_regular(g, k);
    REQUIRE(static_cast<int>(parts.size()) == k);
    std::vector<int> all;
    for (const auto& m : parts) {
      check_perfect(g, m);
      all.insert(all.end(), m.begin(), m.end());
    }
    std::sort(all.begin(), all.end());
    std::vector<int> labels(g.edge_count());
    std::iota(labels.begin(), labels.end(), 0);
    CHECK(all == labels);
  }
}

TEST_CASE("decompose_regular on the block multigraph") {
  const auto bsq = block_structured_square(8, 2, 4);
  const auto k = block_multigraph(bsq.blocks);
  CHECK(k.edge_count() == 32);
  for (int d : k.left_degrees()) CHECK(d == 4);
  for (int d : k.right_degrees()) CHECK(d == 4);
  const auto parts = decompose_regular(k, 4);
  REQUIRE(parts.size() == 4);
  std::set<int> all;
  for (const auto& m : parts) {
    check_perfect(k, m);
    all.insert(m.begin(), m.end());
  }
  CHECK(all.size() == 32);
}

TEST_CASE("decompose_regular embeds irregular graphs") {
  Rng rng(12);
  for (int rep = 0; rep < 10; ++rep) {
    auto full = random_regular(15, 4, rng);
    BipartiteMultigraph g(15, 17);
    for (const auto& e : full.edges()) {
      if (rng() % 4) g.add_edge(e.left, e.right, 100 + e.label);
    }
    CHECK_THROWS_AS(decompose_regular(g, 4), GraphError);
    const auto parts = decompose_regular(g, 4, true);
    REQUIRE(parts.size() == 4);
    std::vector<int> all;
    for (const auto& m : parts) {
      CHECK_NOTHROW(check_matching(g, m));
      all.insert(all.end(), m.begin(), m.end());
    }
    std::sort(all.begin(), all.end());
    std::vector<int> labels;
    for (const auto& e : g.edges()) labels.push_back(e.label);
    std::sort(labels.begin(), labels.end());
    CHECK(all == labels);
  }
}

TEST_CASE("max_matching equals the Konig vertex cover") {
  CHECK(max_matching(BipartiteMultigraph(3, 3)).empty());
  BipartiteMultigraph k33(3, 3);
  for (int i = 0; i < 9; ++i) k33.add_edge(i / 3, i % 3, i);
  CHECK(max_matching(k33).size() == 3);

  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    Rng rng(seed);
    const int size = seed < 2 ? 20 : 12;
    BipartiteMultigraph g(size, size);
    std::bernoulli_distribution coin(seed % 2 ? 0.3 : 0.12);
    int label = 0;
    for (int i = 0; i < size; ++i) {
      for (int j = 0; j < size; ++j) {
        if (coin(rng)) g.add_edge(i, j, label++);
      }
    }
    const auto m = max_matching(g);
    CHECK_NOTHROW(check_matching(g, m));
    CHECK(static_cast<int>(m.size()) == fixtures::min_vertex_cover(g));

    // relabelling the vertices leaves the size alone
    std::vector<int> pl(size), pr(size);
    std::iota(pl.begin(), pl.end(), 0);
    std::iota(pr.begin(), pr.end(), 0);
    std::shuffle(pl.begin(), pl.end(), rng);
    std::shuffle(pr.begin(), pr.end(), rng);
    BipartiteMultigraph h(size, size);
    for (const auto& e : g.edges()) h.add_edge(pl[e.left], pr[e.right], e.label);
    CHECK(max_matching(h).size() == m.size());
  }
}

TEST_CASE("union_components") {
  const auto cyc = cycle_graph(4);
  CHECK(union_components(cyc, {}, {}).components.empty());

  const auto one = union_components(cyc, evens(4), odds(4));
  REQUIRE(one.components.size() == 1);
  const auto& c = one.components[0];
  CHECK(c.cycle);
  CHECK(c.length() == 8);
  CHECK(c.labels.front() == 0);
  CHECK(c.labels[1] == 1);  // smaller neighbour first
  for (std::size_t i = 0; i < c.length(); ++i) {
    CHECK(c.sides[i] == (i % 2 == 0 ? Side::A : Side::B));
    const auto& e = cyc.edge(c.labels[i]);
    const auto& f = cyc.edge(c.labels[(i + 1) % c.length()]);
    CHECK((e.left == f.left || e.right == f.right));
  }

  const auto paths = union_components(cyc, evens(4), {});
  CHECK(paths.components.size() == 4);
  for (const auto& p : paths.components) {
    CHECK(!p.cycle);
    CHECK(p.length() == 1);
  }

  // a shared label is both in M_a and M_b
  CHECK_THROWS_AS(union_components(cyc, evens(4), evens(4)), GraphError);
  CHECK_THROWS_AS(union_components(cyc, std::vector<int>{0, 1}, {}), GraphError);
}

TEST_CASE("union_components on random pairs alternates and partitions") {
  Rng rng(21);
  for (int rep = 0; rep < 20; ++rep) {
    const auto g = random_regular(30, 2, rng);
    const auto parts = decompose_regular(g, 2);
    Matching a = parts[0], b = parts[1];
    // drop a few edges so paths appear too
    a.erase(std::remove_if(a.begin(), a.end(), [&](int) { return rng() % 5 == 0; }), a.end());
    const auto d = union_components(g, a, b);
    CHECK(d.edge_count() == a.size() + b.size());
    std::set<int> seen;
    for (const auto& comp : d.components) {
      for (std::size_t i = 0; i + 1 < comp.length(); ++i) CHECK(comp.sides[i] != comp.sides[i + 1]);
      if (comp.cycle) CHECK(comp.length() % 2 == 0);
      for (std::size_t i = 0; i < comp.length(); ++i) {
        CHECK(seen.insert(comp.labels[i]).second);
        const bool in_a = std::binary_search(a.begin(), a.end(), comp.labels[i]);
        CHECK(in_a == (comp.sides[i] == Side::A));
      }
    }
  }
}

TEST_CASE("cap_components") {
  const auto cyc = cycle_graph(5);
  const auto d = union_components(cyc, evens(5), odds(5));
  const auto none = cap_components(d, 10);
  CHECK(none.deleted.empty());
  CHECK(none.components.edge_count() == 10);

  const auto cap = cap_components(d, 4);
  CHECK(cap.deleted.size() == 2);
  CHECK(cap.components.edge_count() == 8);
  for (const auto& comp : cap.components.components) {
    CHECK(!comp.cycle);
    CHECK(comp.length() <= 4);
  }

  BipartiteMultigraph path(3, 3);
  path.add_edge(0, 0, 0);
  path.add_edge(1, 0, 1);
  path.add_edge(1, 1, 2);
  path.add_edge(2, 1, 3);
  path.add_edge(2, 2, 4);
  const auto pd = union_components(path, std::vector<int>{0, 2, 4}, std::vector<int>{1, 3});
  REQUIRE(pd.components.size() == 1);
  CHECK(pd.components[0].length() == 5);
  CHECK(cap_components(pd, 4).deleted.size() == 1);
  CHECK(cap_components(pd, 1).deleted.size() == 2);
  CHECK_THROWS_AS(cap_components(pd, 0), GraphError);
}

TEST_CASE("cap_components deletion budget") {
  Rng rng(33);
  for (int s : {1, 2, 3, 4, 7}) {
    for (int rep = 0; rep < 5; ++rep) {
      const int size = 60;
      const auto g = random_regular(size, 2, rng);
      const auto parts = decompose_regular(g, 2);
      const auto d = union_components(g, parts[0], parts[1]);
      const auto cap = cap_components(d, s);
      std::size_t bound = 0;
      for (const auto& comp : d.components) bound += (comp.length() + s) / (s + 1);
      CHECK(cap.deleted.size() <= bound);
      CHECK(cap.deleted.size() <= static_cast<std::size_t>(2 * (2 * size) / s));
      CHECK(cap.deleted.size() + cap.components.edge_count() == d.edge_count());
      for (const auto& comp : cap.components.components) {
        CHECK(comp.length() <= static_cast<std::size_t>(s));
        for (std::size_t i = 0; i + 1 < comp.length(); ++i) CHECK(comp.sides[i] != comp.sides[i + 1]);
      }
    }
  }
}
