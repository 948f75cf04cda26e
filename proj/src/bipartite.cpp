#include "equi/bipartite.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <queue>

namespace equi {

BipartiteMultigraph::BipartiteMultigraph(int left_size, int right_size)
    : left_size_(left_size), right_size_(right_size) {
  if (left_size < 0 || right_size < 0) {
    throw GraphError(GraphError::Kind::InvalidInput, "negative vertex class size");
  }
}

void BipartiteMultigraph::add_edge(int left, int right, int label) {
  if (left < 0 || left >= left_size_ || right < 0 || right >= right_size_) {
    throw GraphError(GraphError::Kind::InvalidInput,
                     "edge endpoint out of range (label " + std::to_string(label) + ")");
  }
  if (!index_.emplace(label, edges_.size()).second) {
    throw GraphError(GraphError::Kind::InvalidInput, "duplicate label " + std::to_string(label));
  }
  edges_.push_back({left, right, label});
}

const BipartiteEdge& BipartiteMultigraph::edge(int label) const {
  auto it = index_.find(label);
  if (it == index_.end()) {
    throw GraphError(GraphError::Kind::InvalidInput, "unknown label " + std::to_string(label));
  }
  return edges_[it->second];
}

std::vector<int> BipartiteMultigraph::left_degrees() const {
  std::vector<int> d(left_size_, 0);
  for (const auto& e : edges_) ++d[e.left];
  return d;
}

std::vector<int> BipartiteMultigraph::right_degrees() const {
  std::vector<int> d(right_size_, 0);
  for (const auto& e : edges_) ++d[e.right];
  return d;
}

void check_matching(const BipartiteMultigraph& g, std::span<const int> labels) {
  std::vector<int> left(g.left_size(), -1), right(g.right_size(), -1);
  for (int label : labels) {
    if (!g.has_label(label)) {
      throw GraphError(GraphError::Kind::NotAMatching, "NotAMatching(unknown label " +
                                                           std::to_string(label) + ")");
    }
    const auto& e = g.edge(label);
    if (left[e.left] >= 0 || right[e.right] >= 0) {
      const int other = left[e.left] >= 0 ? left[e.left] : right[e.right];
      throw GraphError(GraphError::Kind::NotAMatching,
                       "NotAMatching(labels " + std::to_string(other) + " and " +
                           std::to_string(label) + " share an endpoint)");
    }
    left[e.left] = right[e.right] = label;
  }
}

namespace detail {

std::vector<int> hopcroft_karp(int left_size, int right_size,
                               const std::vector<std::vector<std::pair<int, int>>>& adj) {
  constexpr int kInf = std::numeric_limits<int>::max();
  std::vector<int> match_left(left_size, -1);   // right vertex
  std::vector<int> match_edge(left_size, -1);   // edge id
  std::vector<int> match_right(right_size, -1); // left vertex
  std::vector<int> dist(left_size);
  std::vector<std::size_t> it(left_size);

  // cheap greedy start
  for (int u = 0; u < left_size; ++u) {
    for (auto [v, id] : adj[u]) {
      if (match_right[v] < 0) {
        match_left[u] = v;
        match_edge[u] = id;
        match_right[v] = u;
        break;
      }
    }
  }

  auto bfs = [&]() {
    std::queue<int> q;
    bool found = false;
    for (int u = 0; u < left_size; ++u) {
      if (match_left[u] < 0) {
        dist[u] = 0;
        q.push(u);
      } else {
        dist[u] = kInf;
      }
    }
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (auto [v, id] : adj[u]) {
        const int w = match_right[v];
        if (w < 0) {
          found = true;
        } else if (dist[w] == kInf) {
          dist[w] = dist[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  };

  // iterative DFS along the layered graph; it[x] is the edge being tried at x
  std::vector<int> stack;
  auto dfs = [&](int root) {
    stack.assign(1, root);
    while (!stack.empty()) {
      const int u = stack.back();
      if (it[u] == adj[u].size()) {
        dist[u] = kInf;
        stack.pop_back();
        if (!stack.empty()) ++it[stack.back()];
        continue;
      }
      const auto [v, id] = adj[u][it[u]];
      const int w = match_right[v];
      if (w < 0) {
        for (const int x : stack) {
          const auto [xv, xid] = adj[x][it[x]];
          match_left[x] = xv;
          match_edge[x] = xid;
          match_right[xv] = x;
        }
        return true;
      }
      if (dist[w] == dist[u] + 1) {
        stack.push_back(w);
      } else {
        ++it[u];
      }
    }
    return false;
  };

  while (bfs()) {
    std::fill(it.begin(), it.end(), 0);
    for (int u = 0; u < left_size; ++u) {
      if (match_left[u] < 0) dfs(u);
    }
  }
  return match_edge;
}

}  // namespace detail

namespace {

std::vector<std::vector<std::pair<int, int>>> adjacency(const BipartiteMultigraph& g) {
  std::vector<std::vector<std::pair<int, int>>> adj(g.left_size());
  for (const auto& e : g.edges()) adj[e.left].emplace_back(e.right, e.label);
  return adj;
}

Matching sorted(std::vector<int> labels) {
  std::sort(labels.begin(), labels.end());
  return labels;
}

void require_regular(const BipartiteMultigraph& g, int k) {
  if (k < 1) throw GraphError(GraphError::Kind::InvalidInput, "k must be >= 1");
  if (g.left_size() != g.right_size()) {
    throw GraphError(GraphError::Kind::NotRegular, "NotRegular(class sizes differ)");
  }
  const auto ld = g.left_degrees();
  for (int v = 0; v < g.left_size(); ++v) {
    if (ld[v] != k) {
      throw GraphError(GraphError::Kind::NotRegular, "NotRegular(left " + std::to_string(v) +
                                                         ", degree " + std::to_string(ld[v]) + ")");
    }
  }
  const auto rd = g.right_degrees();
  for (int v = 0; v < g.right_size(); ++v) {
    if (rd[v] != k) {
      throw GraphError(GraphError::Kind::NotRegular, "NotRegular(right " + std::to_string(v) +
                                                         ", degree " + std::to_string(rd[v]) + ")");
    }
  }
}

}  // namespace

Matching max_matching(const BipartiteMultigraph& g) {
  auto match = detail::hopcroft_karp(g.left_size(), g.right_size(), adjacency(g));
  std::vector<int> labels;
  for (int id : match) {
    if (id >= 0) labels.push_back(id);
  }
  return sorted(std::move(labels));
}

Matching regular_perfect_matching(const BipartiteMultigraph& g, int k) {
  require_regular(g, k);
  Matching m = max_matching(g);
  if (m.size() != static_cast<std::size_t>(g.left_size())) {
    // unreachable for a regular bipartite multigraph (Hall)
    throw GraphError(GraphError::Kind::NotRegular, "no perfect matching found");
  }
  return m;
}

std::vector<Matching> decompose_regular(const BipartiteMultigraph& g, int k, bool embed) {
  if (k < 1) throw GraphError(GraphError::Kind::InvalidInput, "k must be >= 1");
  if (!embed) require_regular(g, k);

  const int size = std::max(g.left_size(), g.right_size());
  BipartiteMultigraph work(size, size);
  int max_label = std::numeric_limits<int>::min();
  for (const auto& e : g.edges()) {
    work.add_edge(e.left, e.right, e.label);
    max_label = std::max(max_label, e.label);
  }
  int next_dummy = g.edge_count() ? max_label + 1 : 0;
  const int first_dummy = next_dummy;
  if (embed) {
    auto ld = work.left_degrees();
    auto rd = work.right_degrees();
    for (int v = 0; v < size; ++v) {
      if (ld[v] > k || rd[v] > k) {
        throw GraphError(GraphError::Kind::NotRegular,
                         "NotRegular(max degree exceeds " + std::to_string(k) + ")");
      }
    }
    // both sides have the same total deficiency, so pairing deficient
    // vertices greedily always completes
    int r = 0;
    for (int u = 0; u < size; ++u) {
      while (ld[u] < k) {
        while (rd[r] == k) ++r;
        work.add_edge(u, r, next_dummy++);
        ++ld[u];
        ++rd[r];
      }
    }
  }

  std::vector<Matching> out;
  out.reserve(k);
  std::vector<BipartiteEdge> remaining(work.edges().begin(), work.edges().end());
  for (int round = k; round >= 1; --round) {
    BipartiteMultigraph current(size, size);
    for (const auto& e : remaining) current.add_edge(e.left, e.right, e.label);
    Matching pm = regular_perfect_matching(current, round);
    std::vector<BipartiteEdge> next;
    next.reserve(remaining.size() - pm.size());
    for (const auto& e : remaining) {
      if (!std::binary_search(pm.begin(), pm.end(), e.label)) next.push_back(e);
    }
    remaining = std::move(next);
    if (embed) {
      std::erase_if(pm, [&](int label) { return label >= first_dummy; });
    }
    out.push_back(std::move(pm));
  }
  return out;
}

std::size_t PathCycleDecomposition::edge_count() const {
  std::size_t total = 0;
  for (const auto& c : components) total += c.length();
  return total;
}

PathCycleDecomposition union_components(const BipartiteMultigraph& g, std::span<const int> ma,
                                        std::span<const int> mb) {
  check_matching(g, ma);
  check_matching(g, mb);

  struct UEdge {
    int label;
    int u;  // left vertex
    int v;  // right vertex, offset by left_size
    Side side;
  };
  std::vector<UEdge> edges;
  edges.reserve(ma.size() + mb.size());
  for (int label : ma) {
    const auto& e = g.edge(label);
    edges.push_back({label, e.left, g.left_size() + e.right, Side::A});
  }
  std::vector<int> a_sorted(ma.begin(), ma.end());
  std::sort(a_sorted.begin(), a_sorted.end());
  for (int label : mb) {
    if (std::binary_search(a_sorted.begin(), a_sorted.end(), label)) {
      throw GraphError(GraphError::Kind::InvalidInput,
                       "label " + std::to_string(label) + " is in both matchings");
    }
    const auto& e = g.edge(label);
    edges.push_back({label, e.left, g.left_size() + e.right, Side::B});
  }

  const int nv = g.left_size() + g.right_size();
  std::vector<std::array<int, 2>> inc(nv, {-1, -1});
  std::vector<int> deg(nv, 0);
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    for (int x : {edges[i].u, edges[i].v}) {
      // cannot exceed 2 since each input is a matching
      inc[x][deg[x]++] = i;
    }
  }
  auto other_end = [&](int e, int x) { return edges[e].u == x ? edges[e].v : edges[e].u; };
  auto other_edge = [&](int x, int e) {
    if (deg[x] < 2) return -1;
    return inc[x][0] == e ? inc[x][1] : inc[x][0];
  };

  std::vector<char> seen(edges.size(), 0);
  PathCycleDecomposition out;
  auto walk = [&](int start_vertex, int start_edge) {
    Component comp;
    int x = start_vertex;
    int e = start_edge;
    while (e >= 0 && !seen[e]) {
      seen[e] = 1;
      comp.labels.push_back(edges[e].label);
      comp.sides.push_back(edges[e].side);
      x = other_end(e, x);
      e = other_edge(x, e);
    }
    return comp;
  };

  // paths start at degree-1 vertices
  for (int x = 0; x < nv; ++x) {
    if (deg[x] == 1 && !seen[inc[x][0]]) {
      Component comp = walk(x, inc[x][0]);
      if (comp.labels.front() > comp.labels.back()) {
        std::reverse(comp.labels.begin(), comp.labels.end());
        std::reverse(comp.sides.begin(), comp.sides.end());
      }
      out.components.push_back(std::move(comp));
    }
  }
  // everything left lies on cycles
  std::vector<int> order(edges.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return edges[a].label < edges[b].label; });
  for (int e : order) {
    if (seen[e]) continue;
    // orient towards the smaller neighbouring label
    const int nu = other_edge(edges[e].u, e);
    const int nv2 = other_edge(edges[e].v, e);
    const int start = edges[nv2].label < edges[nu].label ? edges[e].u : edges[e].v;
    Component comp = walk(start, e);
    comp.cycle = true;
    out.components.push_back(std::move(comp));
  }
  std::sort(out.components.begin(), out.components.end(), [](const auto& a, const auto& b) {
    return *std::min_element(a.labels.begin(), a.labels.end()) <
           *std::min_element(b.labels.begin(), b.labels.end());
  });
  return out;
}

CapResult cap_components(const PathCycleDecomposition& decomp, int s) {
  if (s < 1) throw GraphError(GraphError::Kind::InvalidInput, "cap s must be >= 1");
  CapResult result;
  for (const auto& comp : decomp.components) {
    const auto len = static_cast<long long>(comp.length());
    if (len <= s) {
      result.components.components.push_back(comp);
      continue;
    }
    std::vector<char> cut(len, 0);
    if (comp.cycle) {
      const long long d = (len + s) / (s + 1);  // ceil(len / (s+1))
      for (long long i = 0; i < d; ++i) cut[(i + 1) * len / d - 1] = 1;
    } else {
      for (long long p = s; p < len; p += s + 1) cut[p] = 1;
    }
    Component piece;
    auto flush = [&]() {
      if (!piece.labels.empty()) result.components.components.push_back(std::move(piece));
      piece = Component{};
    };
    for (long long i = 0; i < len; ++i) {
      if (cut[i]) {
        result.deleted.push_back(comp.labels[i]);
        flush();
      } else {
        piece.labels.push_back(comp.labels[i]);
        piece.sides.push_back(comp.sides[i]);
      }
    }
    flush();
  }
  std::sort(result.deleted.begin(), result.deleted.end());
  auto& comps = result.components.components;
  std::stable_sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
    return *std::min_element(a.labels.begin(), a.labels.end()) <
           *std::min_element(b.labels.begin(), b.labels.end());
  });
  return result;
}

}  // namespace equi
