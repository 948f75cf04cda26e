#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "equi/square.hpp"

namespace equi {

struct BipartiteEdge {
  int left = 0;
  int right = 0;
  int label = 0;
};

/// Bipartite multigraph whose edges are identified by unique integer labels.
/// Parallel edges are allowed.
class BipartiteMultigraph {
public:
  BipartiteMultigraph(int left_size, int right_size);

  void add_edge(int left, int right, int label);

  int left_size() const { return left_size_; }
  int right_size() const { return right_size_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const BipartiteEdge> edges() const { return edges_; }
  bool has_label(int label) const { return index_.contains(label); }
  const BipartiteEdge& edge(int label) const;

  std::vector<int> left_degrees() const;
  std::vector<int> right_degrees() const;

private:
  int left_size_;
  int right_size_;
  std::vector<BipartiteEdge> edges_;
  std::unordered_map<int, std::size_t> index_;
};

/// Sorted edge labels, no two sharing an endpoint.
using Matching = std::vector<int>;

class GraphError : public Error {
public:
  enum class Kind { InvalidInput, NotRegular, NotAMatching };

  GraphError(Kind kind, std::string what) : Error(std::move(what)), kind_(kind) {}
  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

/// Throws NotAMatching if two labels share an endpoint or a label is unknown.
void check_matching(const BipartiteMultigraph& g, std::span<const int> labels);

/// Perfect matching of a k-regular bipartite multigraph.
Matching regular_perfect_matching(const BipartiteMultigraph& g, int k);

/// Splits the edges into k matchings. With `embed` the graph only needs
/// maximum degree <= k: it is padded to a k-regular multigraph with dummy
/// vertices and edges, decomposed, and the dummies are dropped again.
std::vector<Matching> decompose_regular(const BipartiteMultigraph& g, int k, bool embed = false);

/// Maximum cardinality matching (Hopcroft-Karp).
Matching max_matching(const BipartiteMultigraph& g);

enum class Side : std::uint8_t { A, B };

struct Component {
  bool cycle = false;
  std::vector<int> labels;  // traversal order
  std::vector<Side> sides;  // which source matching each edge came from

  std::size_t length() const { return labels.size(); }
};

/// Components of the union of two matchings. Cycles start at their minimum
/// label and run towards the smaller neighbouring label; paths are oriented so
/// the first label is not larger than the last. Components are sorted by
/// minimum label.
struct PathCycleDecomposition {
  std::vector<Component> components;

  std::size_t edge_count() const;
};

PathCycleDecomposition union_components(const BipartiteMultigraph& g, std::span<const int> ma,
                                        std::span<const int> mb);

struct CapResult {
  std::vector<int> deleted;  // sorted
  PathCycleDecomposition components;
};

/// Deletes evenly spaced edges so every remaining component has at most s
/// edges. A cycle of length L > s loses ceil(L/(s+1)) edges, a path of length
/// L loses floor(L/(s+1)).
CapResult cap_components(const PathCycleDecomposition& decomp, int s);

namespace detail {

/// Hopcroft-Karp on an adjacency list of (right vertex, edge id) pairs.
/// Returns, for each left vertex, the matched edge id or -1.
std::vector<int> hopcroft_karp(int left_size, int right_size,
                               const std::vector<std::vector<std::pair<int, int>>>& adj);

}  // namespace detail

}  // namespace equi
