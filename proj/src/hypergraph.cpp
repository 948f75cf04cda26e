#include "equi/hypergraph.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>

namespace equi {

std::string to_string(const Vertex& v) {
  static constexpr char kNames[] = {'A', 'B', 'C'};
  return std::string(1, kNames[static_cast<int>(v.cls)]) + std::to_string(v.index);
}

TripartiteHypergraph::TripartiteHypergraph(int size_a, int size_b, int size_c)
    : sizes_{size_a, size_b, size_c} {
  if (size_a < 0 || size_b < 0 || size_c < 0) {
    throw HypergraphError(HypergraphError::Kind::InvalidParam, "negative class size");
  }
}

std::size_t TripartiteHypergraph::add_edge(HyperEdge e) {
  if (e.a < 0 || e.a >= sizes_[0] || e.b < 0 || e.b >= sizes_[1] || e.c < 0 || e.c >= sizes_[2]) {
    throw HypergraphError(HypergraphError::Kind::InvalidParam, "edge vertex out of range");
  }
  edges_.push_back(e);
  return edges_.size() - 1;
}

int TripartiteHypergraph::add_vertex(VertexClass cls) { return sizes_[static_cast<int>(cls)]++; }

int TripartiteHypergraph::degree(const Vertex& v) const {
  return static_cast<int>(
      std::count_if(edges_.begin(), edges_.end(), [&](const HyperEdge& e) { return e.contains(v); }));
}

std::vector<int> TripartiteHypergraph::degrees(VertexClass cls) const {
  std::vector<int> d(class_size(cls), 0);
  for (const auto& e : edges_) ++d[e.at(cls)];
  return d;
}

int TripartiteHypergraph::max_degree() const {
  int best = 0;
  for (auto cls : {VertexClass::A, VertexClass::B, VertexClass::C}) {
    for (int d : degrees(cls)) best = std::max(best, d);
  }
  return best;
}

TripartiteHypergraph from_square(const EquiNSquare& square) {
  const int n = square.order();
  TripartiteHypergraph h(n, n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) h.add_edge({r, c, square.at(r, c)});
  }
  return h;
}

namespace {

void require_vertex(const TripartiteHypergraph& h, const Vertex& v) {
  if (v.index < 0 || v.index >= h.class_size(v.cls)) {
    throw HypergraphError(HypergraphError::Kind::InvalidParam,
                          "vertex " + to_string(v) + " not in hypergraph");
  }
}

// pairs of classes that can share an edge, each pair ordered
constexpr std::array<std::pair<VertexClass, VertexClass>, 3> kClassPairs{{
    {VertexClass::A, VertexClass::B},
    {VertexClass::A, VertexClass::C},
    {VertexClass::B, VertexClass::C},
}};

}  // namespace

int codegree(const TripartiteHypergraph& h, const Vertex& x, const Vertex& y) {
  if (x == y) {
    throw HypergraphError(HypergraphError::Kind::SameVertex, "SameVertex(" + to_string(x) + ")");
  }
  require_vertex(h, x);
  require_vertex(h, y);
  if (x.cls == y.cls) return 0;
  int count = 0;
  for (const auto& e : h.edges()) count += e.contains(x) && e.contains(y);
  return count;
}

std::vector<PairCodegree> pair_codegrees(const TripartiteHypergraph& h) {
  std::map<std::pair<Vertex, Vertex>, int> counts;
  for (const auto& e : h.edges()) {
    for (auto [p, q] : kClassPairs) ++counts[{Vertex{p, e.at(p)}, Vertex{q, e.at(q)}}];
  }
  std::vector<PairCodegree> out;
  out.reserve(counts.size());
  for (const auto& [key, count] : counts) out.push_back({key.first, key.second, count});
  return out;
}

TripartiteHypergraph alon_kim(int t) {
  if (t < 1) throw HypergraphError(HypergraphError::Kind::InvalidParam, "InvalidParam(t < 1)");
  TripartiteHypergraph h(3 * t, 3 * t, 3 * t);
  const int primed = 2 * t;
  for (int i = 0; i < 2 * t; ++i) {
    for (int j = 0; j < t; ++j) {
      h.add_edge({i, i, primed + j});
      h.add_edge({i, primed + j, i});
      h.add_edge({primed + j, i, i});
    }
  }
  return h;
}

TripartiteHypergraph blow_up(const TripartiteHypergraph& h, int factor) {
  if (factor < 1) {
    throw HypergraphError(HypergraphError::Kind::InvalidParam, "InvalidParam(factor < 1)");
  }
  const auto sizes = h.class_sizes();
  TripartiteHypergraph out(sizes[0] * factor, sizes[1] * factor, sizes[2] * factor);
  for (const auto& e : h.edges()) {
    for (int i = 0; i < factor; ++i) {
      for (int j = 0; j < factor; ++j) {
        for (int k = 0; k < factor; ++k) {
          out.add_edge({e.a * factor + i, e.b * factor + j, e.c * factor + k});
        }
      }
    }
  }
  return out;
}

int EdgeColouring::colour_count() const {
  if (colour.empty()) return 0;
  return *std::max_element(colour.begin(), colour.end()) + 1;
}

bool is_proper(const TripartiteHypergraph& h, const EdgeColouring& colouring) {
  if (colouring.colour.size() != h.edge_count()) return false;
  // (vertex, colour) must be unique
  std::set<std::tuple<int, int, int>> seen;
  for (std::size_t i = 0; i < h.edge_count(); ++i) {
    const auto& e = h.edges()[i];
    const int col = colouring.colour[i];
    if (col < 0) return false;
    for (auto cls : {VertexClass::A, VertexClass::B, VertexClass::C}) {
      if (!seen.emplace(static_cast<int>(cls), e.at(cls), col).second) return false;
    }
  }
  return true;
}

EdgeColouring greedy_edge_colouring(const TripartiteHypergraph& h) {
  // used[class][vertex] = colours already present at that vertex
  std::array<std::vector<std::vector<char>>, 3> used;
  for (int c = 0; c < 3; ++c) used[c].resize(h.class_sizes()[c]);
  EdgeColouring out;
  out.colour.reserve(h.edge_count());
  for (const auto& e : h.edges()) {
    const std::array<int, 3> ids{e.a, e.b, e.c};
    int col = 0;
    auto taken = [&](int colour) {
      for (int c = 0; c < 3; ++c) {
        const auto& u = used[c][ids[c]];
        if (colour < static_cast<int>(u.size()) && u[colour]) return true;
      }
      return false;
    };
    while (taken(col)) ++col;
    for (int c = 0; c < 3; ++c) {
      auto& u = used[c][ids[c]];
      if (static_cast<int>(u.size()) <= col) u.resize(col + 1, 0);
      u[col] = 1;
    }
    out.colour.push_back(col);
  }
  return out;
}

EdgeColouring SplitResult::pullback(const EdgeColouring& colouring_of_split) const {
  if (colouring_of_split.colour.size() != split.edge_count()) {
    throw HypergraphError(HypergraphError::Kind::InvalidParam,
                          "colouring does not match the split hypergraph");
  }
  // edge i of the split hypergraph is edge i of the original with x_f
  // replaced, so the colour carries over unchanged
  return colouring_of_split;
}

SplitResult split_high_codegree(const TripartiteHypergraph& h, int threshold) {
  if (threshold < 1) {
    throw HypergraphError(HypergraphError::Kind::InvalidParam, "InvalidParam(threshold < 1)");
  }
  SplitResult result;
  std::map<Vertex, Vertex> partner;
  std::string offending;
  for (const auto& pc : pair_codegrees(h)) {
    if (pc.count <= threshold) continue;
    if (partner.contains(pc.x) || partner.contains(pc.y)) {
      offending += " " + to_string(pc.x) + to_string(pc.y);
    }
    partner[pc.x] = pc.y;
    partner[pc.y] = pc.x;
    result.pairs.emplace_back(std::min(pc.x, pc.y), std::max(pc.x, pc.y));
  }
  if (!offending.empty()) {
    std::string all;
    for (const auto& [x, y] : result.pairs) all += " " + to_string(x) + to_string(y);
    throw HypergraphError(HypergraphError::Kind::NotAMatching,
                          "NotAMatching(E =" + all + "; overlapping:" + offending + ")");
  }

  result.fresh_vertex.assign(h.edge_count(), -1);
  // rebuilt edge by edge so replaced edges keep their index
  TripartiteHypergraph split(h.class_sizes()[0], h.class_sizes()[1], h.class_sizes()[2]);
  std::vector<HyperEdge> edges(h.edges().begin(), h.edges().end());
  for (const auto& [x, y] : result.pairs) {
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const auto& e = h.edges()[i];
      if (!e.contains(x)) continue;
      if (!e.contains(y)) {
        throw HypergraphError(HypergraphError::Kind::NotSeparated,
                              "NotSeparated(edge " + std::to_string(i) + " contains " +
                                  to_string(x) + " but not " + to_string(y) + ")");
      }
      const int fresh = split.add_vertex(x.cls);
      result.fresh_vertex[i] = fresh;
      switch (x.cls) {
        case VertexClass::A: edges[i].a = fresh; break;
        case VertexClass::B: edges[i].b = fresh; break;
        case VertexClass::C: edges[i].c = fresh; break;
      }
    }
  }
  for (const auto& e : edges) split.add_edge(e);
  result.split = std::move(split);
  return result;
}

namespace {

class HyperMatchingSearch {
public:
  HyperMatchingSearch(const TripartiteHypergraph& h, std::uint64_t budget) : h_(h), budget_(budget) {
    const auto sizes = h.class_sizes();
    offset_ = {0, sizes[0], sizes[0] + sizes[1]};
    const int nv = sizes[0] + sizes[1] + sizes[2];
    covered_.assign(nv, 0);
    incident_.resize(nv);
    for (std::size_t i = 0; i < h.edge_count(); ++i) {
      for (int v : ids(h.edges()[i])) incident_[v].push_back(i);
    }
  }

  HyperMatchingResult run() {
    search();
    HyperMatchingResult r;
    r.edges = best_;
    std::sort(r.edges.begin(), r.edges.end());
    r.optimal = !aborted_;
    r.nodes = nodes_;
    return r;
  }

private:
  std::array<int, 3> ids(const HyperEdge& e) const {
    return {offset_[0] + e.a, offset_[1] + e.b, offset_[2] + e.c};
  }

  bool live(std::size_t edge) const {
    for (int v : ids(h_.edges()[edge])) {
      if (covered_[v]) return false;
    }
    return true;
  }

  void search() {
    if (aborted_) return;
    if (++nodes_ > budget_) {
      aborted_ = true;
      return;
    }
    if (current_.size() > best_.size()) best_ = current_;

    // live degree of every uncovered vertex, per class coverable counts
    std::array<int, 3> coverable{0, 0, 0};
    int pick = -1;
    int pick_degree = 0;
    const int nv = static_cast<int>(covered_.size());
    for (int v = 0; v < nv; ++v) {
      if (covered_[v]) continue;
      int d = 0;
      for (std::size_t e : incident_[v]) d += live(e);
      if (d == 0) continue;
      const int cls = v >= offset_[2] ? 2 : v >= offset_[1] ? 1 : 0;
      ++coverable[cls];
      if (pick < 0 || d < pick_degree) {
        pick = v;
        pick_degree = d;
      }
    }
    if (pick < 0) return;
    const int bound = static_cast<int>(current_.size()) +
                      *std::min_element(coverable.begin(), coverable.end());
    if (bound <= static_cast<int>(best_.size())) return;

    std::vector<HyperEdge> tried;
    for (std::size_t e : incident_[pick]) {
      if (!live(e)) continue;
      const auto& edge = h_.edges()[e];
      if (std::find(tried.begin(), tried.end(), edge) != tried.end()) continue;  // parallel copy
      tried.push_back(edge);
      const auto vs = ids(edge);
      for (int v : vs) covered_[v] = 1;
      current_.push_back(e);
      search();
      current_.pop_back();
      for (int v : vs) covered_[v] = 0;
      if (aborted_) return;
    }
    covered_[pick] = 1;  // leave `pick` uncovered
    search();
    covered_[pick] = 0;
  }

  const TripartiteHypergraph& h_;
  std::uint64_t budget_;
  std::array<int, 3> offset_{};
  std::vector<char> covered_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<std::size_t> current_;
  std::vector<std::size_t> best_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

std::vector<int> ints_of(std::string_view line, int line_no) {
  std::vector<int> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == ' ' || line[i] == '\r' || line[i] == '\t') {
      ++i;
      continue;
    }
    int v = 0;
    auto [ptr, ec] = std::from_chars(line.data() + i, line.data() + line.size(), v);
    if (ec != std::errc()) throw ParseError(line_no, "invalid integer");
    out.push_back(v);
    i = static_cast<std::size_t>(ptr - line.data());
  }
  return out;
}

}  // namespace

HyperMatchingResult max_matching_exact(const TripartiteHypergraph& h, std::uint64_t node_budget) {
  return HyperMatchingSearch(h, node_budget).run();
}

std::string format_hypergraph(const TripartiteHypergraph& h) {
  const auto s = h.class_sizes();
  std::string out = std::to_string(s[0]) + " " + std::to_string(s[1]) + " " + std::to_string(s[2]) + "\n";
  for (const auto& e : h.edges()) {
    out += std::to_string(e.a) + " " + std::to_string(e.b) + " " + std::to_string(e.c) + "\n";
  }
  return out;
}

TripartiteHypergraph parse_hypergraph(std::string_view text) {
  int line_no = 0;
  TripartiteHypergraph h;
  bool have_header = false;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    const auto line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    const auto v = ints_of(line, line_no);
    if (v.empty()) continue;
    if (v.size() != 3) throw ParseError(line_no, "expected 3 entries");
    if (!have_header) {
      h = TripartiteHypergraph(v[0], v[1], v[2]);
      have_header = true;
      continue;
    }
    try {
      h.add_edge({v[0], v[1], v[2]});
    } catch (const HypergraphError&) {
      throw ParseError(line_no, "edge vertex out of range");
    }
  }
  if (!have_header) throw ParseError(1, "expected class sizes");
  return h;
}

}  // namespace equi
