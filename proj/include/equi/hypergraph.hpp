#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "equi/square.hpp"

namespace equi {

enum class VertexClass : std::uint8_t { A = 0, B = 1, C = 2 };

/// A vertex is identified by its class and its index within that class.
/// Ordering is lexicographic (class first).
struct Vertex {
  VertexClass cls = VertexClass::A;
  int index = 0;

  friend auto operator<=>(const Vertex&, const Vertex&) = default;
};

std::string to_string(const Vertex& v);

struct HyperEdge {
  int a = 0;
  int b = 0;
  int c = 0;

  int at(VertexClass cls) const { return cls == VertexClass::A ? a : cls == VertexClass::B ? b : c; }
  bool contains(const Vertex& v) const { return at(v.cls) == v.index; }
  friend bool operator==(const HyperEdge&, const HyperEdge&) = default;
};

class HypergraphError : public Error {
public:
  enum class Kind { InvalidParam, SameVertex, NotAMatching, NotSeparated, Parse };

  HypergraphError(Kind kind, std::string what) : Error(std::move(what)), kind_(kind) {}
  Kind kind() const { return kind_; }

private:
  Kind kind_;
};

/// 3-partite 3-uniform hypergraph with classes A, B, C. Multi-edges are kept
/// as repeated entries; edges are referred to by their index in edges().
class TripartiteHypergraph {
public:
  TripartiteHypergraph() = default;
  TripartiteHypergraph(int size_a, int size_b, int size_c);

  std::array<int, 3> class_sizes() const { return sizes_; }
  int class_size(VertexClass cls) const { return sizes_[static_cast<int>(cls)]; }
  std::span<const HyperEdge> edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  std::size_t add_edge(HyperEdge e);
  int add_vertex(VertexClass cls);

  int degree(const Vertex& v) const;
  /// Degrees of every vertex of one class.
  std::vector<int> degrees(VertexClass cls) const;
  int max_degree() const;

  friend bool operator==(const TripartiteHypergraph&, const TripartiteHypergraph&) = default;

private:
  std::array<int, 3> sizes_{0, 0, 0};
  std::vector<HyperEdge> edges_;
};

/// Rows -> A, columns -> B, symbols -> C; one edge per cell in row-major order.
TripartiteHypergraph from_square(const EquiNSquare& square);

int codegree(const TripartiteHypergraph& h, const Vertex& x, const Vertex& y);

/// Hypergraph on 3t + 3t + 3t vertices with edges (x_i, y_i, z'_j),
/// (x_i, y'_j, z_i), (x'_j, y_i, z_i) for i < 2t, j < t. Indices 0..2t-1 are
/// the unprimed vertices and 2t..3t-1 the primed ones.
TripartiteHypergraph alon_kim(int t);

/// Replaces every vertex v by copies v*factor .. v*factor+factor-1 and every
/// edge by the factor^3 edges over all copy combinations.
TripartiteHypergraph blow_up(const TripartiteHypergraph& h, int factor);

/// Edge colouring indexed by edge index.
struct EdgeColouring {
  std::vector<int> colour;

  int colour_count() const;
};

/// True iff no two edges sharing a vertex have the same colour.
bool is_proper(const TripartiteHypergraph& h, const EdgeColouring& colouring);

/// First-fit colouring in edge index order.
EdgeColouring greedy_edge_colouring(const TripartiteHypergraph& h);

/// Result of the vertex-splitting transform. Edge i of `split` corresponds to
/// edge i of the input, so a colouring pulls back index by index.
struct SplitResult {
  TripartiteHypergraph split;
  /// High-codegree pairs (x_f, partner), x_f being the replaced vertex.
  std::vector<std::pair<Vertex, Vertex>> pairs;
  /// For every edge, the fresh vertex that replaced x_f in it, if any
  /// (index in x_f's class), otherwise -1.
  std::vector<int> fresh_vertex;

  EdgeColouring pullback(const EdgeColouring& colouring_of_split) const;
};

/// Every pair whose codegree exceeds `threshold` must form a matching, and
/// every edge through the lexicographically smaller vertex x_f of such a pair
/// must contain the whole pair. In each edge containing a pair, x_f is
/// replaced by a fresh degree-one vertex of the same class.
SplitResult split_high_codegree(const TripartiteHypergraph& h, int threshold);

/// Pairs of vertices with their codegree, for every pair with codegree > 0.
struct PairCodegree {
  Vertex x;
  Vertex y;
  int count = 0;
};
std::vector<PairCodegree> pair_codegrees(const TripartiteHypergraph& h);

struct HyperMatchingResult {
  std::vector<std::size_t> edges;  // edge indices, sorted
  bool optimal = false;
  std::uint64_t nodes = 0;
};

/// Maximum matching by branch and bound: branch on the uncovered vertex with
/// the fewest live edges (use one of them, or leave the vertex uncovered) and
/// prune with the smallest count of coverable vertices over the three classes.
/// `node_budget` counts expanded search nodes.
HyperMatchingResult max_matching_exact(const TripartiteHypergraph& h, std::uint64_t node_budget);

std::string format_hypergraph(const TripartiteHypergraph& h);
TripartiteHypergraph parse_hypergraph(std::string_view text);

}  // namespace equi
