#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include "normcert/errors.hpp"
#include "normcert/graph.hpp"

namespace normcert {

inline constexpr int kMaxIsomorphismVertices = 16;

namespace detail {

// Joint colour refinement on two graphs so colours are comparable.
inline std::pair<std::vector<int>, std::vector<int>> refine_colours(const Graph& g,
                                                                    const Graph& h) {
  std::vector<int> cg(g.vertex_count()), ch(h.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) cg[v] = g.degree(v);
  for (int v = 0; v < h.vertex_count(); ++v) ch[v] = h.degree(v);
  const int rounds = std::max(g.vertex_count(), 1);
  for (int round = 0; round < rounds; ++round) {
    std::map<std::vector<int>, int> palette;
    auto signature = [](const Graph& gr, const std::vector<int>& c, int v) {
      std::vector<int> s;
      s.reserve(gr.degree(v) + 1);
      for (int w : gr.neighbours(v)) s.push_back(c[w]);
      std::sort(s.begin(), s.end());
      s.insert(s.begin(), c[v]);
      return s;
    };
    std::vector<std::vector<int>> sg(g.vertex_count()), sh(h.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) palette[sg[v] = signature(g, cg, v)];
    for (int v = 0; v < h.vertex_count(); ++v) palette[sh[v] = signature(h, ch, v)];
    int next = 0;
    for (auto& [sig, id] : palette) id = next++;
    std::vector<int> ng(g.vertex_count()), nh(h.vertex_count());
    for (int v = 0; v < g.vertex_count(); ++v) ng[v] = palette[sg[v]];
    for (int v = 0; v < h.vertex_count(); ++v) nh[v] = palette[sh[v]];
    const bool stable = ng.size() + nh.size() == 0 ||
                        (std::set<int>(ng.begin(), ng.end()).size() ==
                             std::set<int>(cg.begin(), cg.end()).size() &&
                         std::set<int>(nh.begin(), nh.end()).size() ==
                             std::set<int>(ch.begin(), ch.end()).size());
    cg = std::move(ng);
    ch = std::move(nh);
    if (stable && round > 0) break;
  }
  return {cg, ch};
}

inline bool extend(const Graph& g, const Graph& h, const std::vector<int>& cg,
                   const std::vector<int>& ch, const std::vector<int>& order, std::size_t depth,
                   std::vector<int>& map, std::vector<bool>& used) {
  if (depth == order.size()) return true;
  const int v = order[depth];
  for (int w = 0; w < h.vertex_count(); ++w) {
    if (used[w] || ch[w] != cg[v]) continue;
    bool ok = true;
    for (std::size_t i = 0; i < depth && ok; ++i) {
      const int u = order[i];
      ok = g.adjacent(u, v) == h.adjacent(map[u], w);
    }
    if (!ok) continue;
    map[v] = w;
    used[w] = true;
    if (extend(g, h, cg, ch, order, depth + 1, map, used)) return true;
    used[w] = false;
  }
  map[v] = -1;
  return false;
}

}  // namespace detail

/// Exact isomorphism test by colour refinement plus backtracking.
/// Throws inconclusive_error above kMaxIsomorphismVertices vertices.
inline bool is_isomorphic(const Graph& g, const Graph& h) {
  if (g.vertex_count() > kMaxIsomorphismVertices || h.vertex_count() > kMaxIsomorphismVertices) {
    throw inconclusive_error("is_isomorphic: more than 16 vertices");
  }
  if (g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count()) return false;
  auto [cg, ch] = detail::refine_colours(g, h);
  {
    auto a = cg, b = ch;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return false;
  }
  // Rarest colours first, then neighbours of already-placed vertices.
  std::map<int, int> freq;
  for (int c : cg) ++freq[c];
  std::vector<int> order;
  std::vector<bool> placed(g.vertex_count(), false);
  while (static_cast<int>(order.size()) < g.vertex_count()) {
    int best = -1;
    auto key = [&](int v) {
      int links = 0;
      for (int w : g.neighbours(v)) links += placed[w];
      return std::make_tuple(-links, freq[cg[v]], v);
    };
    for (int v = 0; v < g.vertex_count(); ++v)
      if (!placed[v] && (best < 0 || key(v) < key(best))) best = v;
    placed[best] = true;
    order.push_back(best);
  }
  std::vector<int> map(g.vertex_count(), -1);
  std::vector<bool> used(h.vertex_count(), false);
  return detail::extend(g, h, cg, ch, order, 0, map, used);
}

}  // namespace normcert
