#pragma once

// Test-only reference implementations, kept independent of the library
// code paths they check: bitmask subset enumeration with its own
// connectivity / 1PI / divergence predicates.

#include <vector>

#include "renorm/graph.hpp"

namespace oracle {

using renorm::FeynmanGraph;

struct Flat {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> legs_at; // per vertex
};

inline Flat flatten(const FeynmanGraph& g) {
  Flat f;
  f.n = g.vertex_count();
  f.edges = g.internal_edges;
  f.legs_at.assign(f.n, 0);
  for (int l : g.external_legs) f.legs_at[l]++;
  return f;
}

inline bool mask_connected(const Flat& f, unsigned mask, int skip_edge = -1) {
  int start = -1, count = 0;
  for (int v = 0; v < f.n; ++v)
    if (mask & (1u << v)) {
      if (start < 0) start = v;
      ++count;
    }
  if (count == 0) return false;
  unsigned seen = 1u << start;
  bool grew = true;
  while (grew) {
    grew = false;
    for (int e = 0; e < static_cast<int>(f.edges.size()); ++e) {
      if (e == skip_edge) continue;
      auto [a, b] = f.edges[e];
      if (!(mask & (1u << a)) || !(mask & (1u << b))) continue;
      if ((seen & (1u << a)) && !(seen & (1u << b))) seen |= 1u << b, grew = true;
      if ((seen & (1u << b)) && !(seen & (1u << a))) seen |= 1u << a, grew = true;
    }
  }
  int reached = 0;
  for (int v = 0; v < f.n; ++v)
    if (seen & (1u << v)) ++reached;
  return reached == count;
}

/// Divergence of the induced subgraph on `mask`: connected, every edge
/// non-separating, at least one loop, and 2 or 3 boundary legs.
inline bool mask_divergent(const Flat& f, unsigned mask) {
  if (!mask_connected(f, mask)) return false;
  int edges_inside = 0;
  for (int e = 0; e < static_cast<int>(f.edges.size()); ++e) {
    auto [a, b] = f.edges[e];
    bool inside = (mask & (1u << a)) && (mask & (1u << b));
    if (!inside) continue;
    ++edges_inside;
    if (!mask_connected(f, mask, e)) return false;
  }
  int nvert = 0, legs = 0;
  for (int v = 0; v < f.n; ++v) {
    if (!(mask & (1u << v))) continue;
    ++nvert;
    legs += f.legs_at[v];
  }
  for (const auto& [a, b] : f.edges) {
    bool ina = mask & (1u << a), inb = mask & (1u << b);
    if (ina != inb) ++legs; // boundary edge becomes an external leg
  }
  int loops = edges_inside - nvert + 1;
  if (loops < 1) return false;
  return legs == 2 || legs == 3;
}

/// All admissible embeddings as sorted families of sorted vertex lists.
inline std::vector<std::vector<std::vector<int>>> embeddings(const FeynmanGraph& g) {
  Flat f = flatten(g);
  std::vector<unsigned> cands;
  unsigned full = (1u << f.n) - 1;
  for (unsigned mask = 1; mask < full; ++mask)
    if (mask_divergent(f, mask)) cands.push_back(mask);

  std::vector<std::vector<std::vector<int>>> out;
  std::vector<unsigned> chosen;
  auto to_family = [&](const std::vector<unsigned>& masks) {
    std::vector<std::vector<int>> fam;
    for (unsigned m : masks) {
      std::vector<int> comp;
      for (int v = 0; v < f.n; ++v)
        if (m & (1u << v)) comp.push_back(v);
      fam.push_back(std::move(comp));
    }
    std::sort(fam.begin(), fam.end());
    return fam;
  };
  // Recursive choice of pairwise disjoint candidates.
  std::function<void(std::size_t)> rec = [&](std::size_t from) {
    for (std::size_t i = from; i < cands.size(); ++i) {
      bool ok = true;
      for (unsigned m : chosen)
        if (m & cands[i]) ok = false;
      if (!ok) continue;
      chosen.push_back(cands[i]);
      out.push_back(to_family(chosen));
      rec(i + 1);
      chosen.pop_back();
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace oracle
