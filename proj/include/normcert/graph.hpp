#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "normcert/errors.hpp"

namespace normcert {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

/// Simple undirected graph on vertices 0..vertex_count-1.
///
/// Edges are stored with u < v in sorted order, so two graphs built from the
/// same edge set compare and serialize identically.
class Graph {
 public:
  Graph() = default;

  Graph(int vertex_count, std::vector<Edge> edges) : n_(vertex_count) {
    if (vertex_count < 0) throw usage_error("negative vertex count");
    for (auto [u, v] : edges) {
      if (u < 0 || v < 0 || u >= n_ || v >= n_) {
        throw usage_error("edge endpoint out of range: " + std::to_string(u) + "-" +
                          std::to_string(v));
      }
      if (u == v) throw usage_error("loop at vertex " + std::to_string(u));
      edges_.emplace_back(std::min(u, v), std::max(u, v));
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
      throw usage_error("duplicate edge");
    }
    adjacency_.assign(n_, {});
    for (auto [u, v] : edges_) {
      adjacency_[u].push_back(v);
      adjacency_[v].push_back(u);
    }
    for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
  }

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Vertex>& neighbours(Vertex v) const { return adjacency_.at(v); }
  int degree(Vertex v) const { return static_cast<int>(adjacency_.at(v).size()); }

  bool adjacent(Vertex u, Vertex v) const {
    const auto& nb = adjacency_.at(u);
    return std::binary_search(nb.begin(), nb.end(), v);
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
};

/// Subset of the vertices of some host graph.
using VertexSet = std::set<Vertex>;

// Named families. Labelings are fixed so certificates are reproducible:
//   cycle(k): i ~ i+1 mod k
//   complete_bipartite(m, n): left 0..m-1, right m..m+n-1
//   kpm(m): a_i = i, b_i = m + i, every a_i b_j with i != j
//   hypercube(d): binary strings as integers, adjacent when differing in one bit

inline Graph cycle(int k) {
  if (k < 3) throw usage_error("cycle needs k >= 3");
  std::vector<Edge> e;
  for (int i = 0; i < k; ++i) e.emplace_back(i, (i + 1) % k);
  return Graph(k, e);
}

inline Graph path(int vertices) {
  if (vertices < 1) throw usage_error("path needs at least one vertex");
  std::vector<Edge> e;
  for (int i = 0; i + 1 < vertices; ++i) e.emplace_back(i, i + 1);
  return Graph(vertices, e);
}

inline Graph complete_bipartite(int m, int n) {
  if (m < 1 || n < 1) throw usage_error("complete_bipartite needs m, n >= 1");
  std::vector<Edge> e;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) e.emplace_back(i, m + j);
  return Graph(m + n, e);
}

/// K_{m,m} minus the perfect matching {a_i b_i}.
inline Graph kpm(int m) {
  if (m < 2) throw usage_error("kpm needs m >= 2");
  std::vector<Edge> e;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i != j) e.emplace_back(i, m + j);
  return Graph(2 * m, e);
}

inline Graph hypercube(int d) {
  if (d < 1 || d > 16) throw usage_error("hypercube needs 1 <= d <= 16");
  const int n = 1 << d;
  std::vector<Edge> e;
  for (int v = 0; v < n; ++v)
    for (int b = 0; b < d; ++b)
      if (int w = v ^ (1 << b); v < w) e.emplace_back(v, w);
  return Graph(n, e);
}

/// Each vertex v becomes the edge (2v, 2v+1); for uv in E(H) the crossing
/// pairs (2u, 2v+1) and (2u+1, 2v) are added. Classes: even and odd labels.
inline Graph bowtie_blowup(const Graph& h) {
  std::vector<Edge> e;
  for (int v = 0; v < h.vertex_count(); ++v) e.emplace_back(2 * v, 2 * v + 1);
  for (auto [u, v] : h.edges()) {
    e.emplace_back(2 * u, 2 * v + 1);
    e.emplace_back(2 * u + 1, 2 * v);
  }
  return Graph(2 * h.vertex_count(), e);
}

/// H box K_2: copies on 0..n-1 and n..2n-1 joined by the matching v ~ n+v.
inline Graph cartesian_k2(const Graph& h) {
  const int n = h.vertex_count();
  std::vector<Edge> e;
  for (auto [u, v] : h.edges()) {
    e.emplace_back(u, v);
    e.emplace_back(n + u, n + v);
  }
  for (int v = 0; v < n; ++v) e.emplace_back(v, n + v);
  return Graph(2 * n, e);
}

inline Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> e = a.edges();
  const int off = a.vertex_count();
  for (auto [u, v] : b.edges()) e.emplace_back(off + u, off + v);
  return Graph(a.vertex_count() + b.vertex_count(), e);
}

/// Graph with vertex v renamed to perm[v].
inline Graph relabel(const Graph& g, const std::vector<Vertex>& perm) {
  if (static_cast<int>(perm.size()) != g.vertex_count()) throw usage_error("permutation size");
  std::vector<Edge> e;
  for (auto [u, v] : g.edges()) e.emplace_back(perm.at(u), perm.at(v));
  return Graph(g.vertex_count(), e);
}

struct StructuralReport {
  bool bipartite = false;
  // Side of each vertex in a 2-colouring (valid only when bipartite).
  std::vector<int> side;
  bool eulerian = false;
  std::optional<int> regular_degree;
  std::vector<int> degree_sequence;  // indexed by vertex
  int edge_count = 0;
};

inline StructuralReport structural_report(const Graph& g) {
  StructuralReport r;
  const int n = g.vertex_count();
  r.edge_count = g.edge_count();
  r.degree_sequence.resize(n);
  r.eulerian = true;
  for (int v = 0; v < n; ++v) {
    r.degree_sequence[v] = g.degree(v);
    if (g.degree(v) % 2 != 0) r.eulerian = false;
  }
  if (n > 0 && std::all_of(r.degree_sequence.begin(), r.degree_sequence.end(),
                           [&](int d) { return d == r.degree_sequence[0]; })) {
    r.regular_degree = r.degree_sequence[0];
  }
  r.side.assign(n, -1);
  r.bipartite = true;
  for (int s = 0; s < n && r.bipartite; ++s) {
    if (r.side[s] != -1) continue;
    r.side[s] = 0;
    std::vector<Vertex> stack{s};
    while (!stack.empty() && r.bipartite) {
      Vertex u = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbours(u)) {
        if (r.side[w] == -1) {
          r.side[w] = 1 - r.side[u];
          stack.push_back(w);
        } else if (r.side[w] == r.side[u]) {
          r.bipartite = false;
          break;
        }
      }
    }
  }
  if (!r.bipartite) r.side.clear();
  return r;
}

inline void check_vertex_set(const Graph& g, const VertexSet& x) {
  for (Vertex v : x)
    if (v < 0 || v >= g.vertex_count()) throw usage_error("vertex set member out of range");
}

/// N*(X): neighbours of members of X that are not themselves in X.
inline VertexSet exterior_neighbourhood(const Graph& g, const VertexSet& x) {
  check_vertex_set(g, x);
  VertexSet out;
  for (Vertex v : x)
    for (Vertex w : g.neighbours(v))
      if (!x.count(w)) out.insert(w);
  return out;
}

/// Number of edges with both ends in X.
inline int induced_edge_count(const Graph& g, const VertexSet& x) {
  int count = 0;
  for (auto [u, v] : g.edges())
    if (x.count(u) && x.count(v)) ++count;
  return count;
}

}  // namespace normcert
