#pragma once

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "normcert/errors.hpp"
#include "normcert/graph.hpp"

namespace normcert {

inline constexpr int kMaxStructureVertices = 16;

/// Outcome of the two structural conditions behind the twisted blow-up argument:
///  (i)  some edge e whose exterior neighbourhood N*(e) induces exactly one edge;
///  (ii) every vertex set X inducing exactly two edges has an edge inside N*(X).
struct BowtieStructureReport {
  std::optional<Edge> edge_in_unique_4cycle;
  bool two_edge_sets_ok = true;
  std::optional<VertexSet> counterexample;
};

inline BowtieStructureReport verify_bowtie_structure(const Graph& g) {
  const int n = g.vertex_count();
  if (n > kMaxStructureVertices) {
    throw inconclusive_error("verify_bowtie_structure: more than 16 vertices");
  }
  std::vector<std::uint32_t> nbr(n, 0);
  for (auto [u, v] : g.edges()) {
    nbr[u] |= 1u << v;
    nbr[v] |= 1u << u;
  }
  auto induced = [&](std::uint32_t set) {
    int count = 0;
    for (auto [u, v] : g.edges())
      if ((set >> u & 1u) && (set >> v & 1u)) ++count;
    return count;
  };
  auto exterior = [&](std::uint32_t set) {
    std::uint32_t out = 0;
    for (int v = 0; v < n; ++v)
      if (set >> v & 1u) out |= nbr[v];
    return out & ~set;
  };

  BowtieStructureReport report;
  for (auto [u, v] : g.edges()) {
    if (induced(exterior((1u << u) | (1u << v))) == 1) {
      report.edge_in_unique_4cycle = Edge{u, v};
      break;
    }
  }
  const std::uint32_t limit = n == 32 ? 0 : (1u << n);
  for (std::uint32_t set = 1; set < limit; ++set) {
    if (std::popcount(set) < 3 || induced(set) != 2) continue;
    if (induced(exterior(set)) == 0) {
      report.two_edge_sets_ok = false;
      VertexSet x;
      for (int v = 0; v < n; ++v)
        if (set >> v & 1u) x.insert(v);
      report.counterexample = x;
      break;
    }
  }
  return report;
}

}  // namespace normcert
