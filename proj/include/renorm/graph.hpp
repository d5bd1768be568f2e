#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "renorm/config.hpp"
#include "renorm/errors.hpp"

namespace renorm {

/// A valence-3 scalar-theory graph: a connected multigraph on named
/// vertices (no self-loops) plus a multiset of external legs. Every
/// vertex carries exactly three leg slots in total. The empty graph is
/// a distinguished value.
struct FeynmanGraph {
  std::vector<std::string> vertex_ids;            // unique, order fixes indices
  std::vector<std::pair<int, int>> internal_edges; // sorted (lo, hi) index pairs
  std::vector<int> external_legs;                  // sorted vertex indices, repeats ok
  std::string name;

  bool empty() const { return vertex_ids.empty(); }
  int vertex_count() const { return static_cast<int>(vertex_ids.size()); }
  int edge_count() const { return static_cast<int>(internal_edges.size()); }
  int leg_count() const { return static_cast<int>(external_legs.size()); }
};

/// An embedding of an admissible subgraph: pairwise disjoint vertex
/// subsets of the host, each inducing a connected divergent 1PI
/// subgraph once boundary edges are re-read as external legs.
struct SubgraphEmbedding {
  std::vector<std::vector<int>> components; // sorted subsets, sorted between

  bool empty() const { return components.empty(); }

  bool operator==(const SubgraphEmbedding& o) const { return components == o.components; }
  bool operator<(const SubgraphEmbedding& o) const { return components < o.components; }
};

namespace detail {

inline int internal_degree(const FeynmanGraph& g, int v) {
  int d = 0;
  for (const auto& [a, b] : g.internal_edges) d += (a == v) + (b == v);
  return d;
}

inline int leg_count_at(const FeynmanGraph& g, int v) {
  int d = 0;
  for (int l : g.external_legs) d += (l == v);
  return d;
}

/// Connectivity of the graph spanned by `edges` over `n` vertices; every
/// vertex must be reached. A single vertex with no edges is connected.
inline bool connected(int n, const std::vector<std::pair<int, int>>& edges,
                      std::optional<int> skip_edge = std::nullopt) {
  if (n == 0) return false;
  std::vector<std::vector<int>> adj(n);
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    if (skip_edge && *skip_edge == e) continue;
    adj[edges[e].first].push_back(edges[e].second);
    adj[edges[e].second].push_back(edges[e].first);
  }
  std::vector<char> seen(n, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c != 0; });
}

} // namespace detail

/// Validates all FeynmanGraph invariants; throws domain_error naming the
/// offending element.
inline void validate(const FeynmanGraph& g) {
  if (g.empty()) {
    if (!g.internal_edges.empty() || !g.external_legs.empty())
      throw domain_error("empty graph must have no edges or legs");
    return;
  }
  {
    std::set<std::string> ids(g.vertex_ids.begin(), g.vertex_ids.end());
    if (ids.size() != g.vertex_ids.size())
      throw domain_error("duplicate vertex id in graph '" + g.name + "'");
  }
  const int n = g.vertex_count();
  for (const auto& [a, b] : g.internal_edges) {
    if (a < 0 || a >= n || b < 0 || b >= n)
      throw domain_error("edge endpoint out of range in graph '" + g.name + "'");
    if (a == b)
      throw domain_error("self-loop at vertex '" + g.vertex_ids[a] + "' in graph '" +
                         g.name + "'");
  }
  for (int l : g.external_legs)
    if (l < 0 || l >= n)
      throw domain_error("external leg out of range in graph '" + g.name + "'");
  for (int v = 0; v < n; ++v) {
    int valence = detail::internal_degree(g, v) + detail::leg_count_at(g, v);
    if (valence != 3)
      throw domain_error("vertex '" + g.vertex_ids[v] + "' in graph '" + g.name +
                         "' has valence " + std::to_string(valence) + ", expected 3");
  }
  if (!detail::connected(n, g.internal_edges))
    throw domain_error("internal-edge graph of '" + g.name + "' is disconnected");
}

/// Builds and validates a graph from vertex ids, edge id pairs and leg ids.
inline FeynmanGraph make_graph(std::string name, std::vector<std::string> vertices,
                               const std::vector<std::pair<std::string, std::string>>& edges,
                               const std::vector<std::string>& legs) {
  FeynmanGraph g;
  g.name = std::move(name);
  g.vertex_ids = std::move(vertices);
  std::map<std::string, int> index;
  for (int i = 0; i < g.vertex_count(); ++i) index[g.vertex_ids[i]] = i;
  auto resolve = [&](const std::string& id) {
    auto it = index.find(id);
    if (it == index.end())
      throw domain_error("graph '" + g.name + "' references unknown vertex '" + id + "'");
    return it->second;
  };
  for (const auto& [a, b] : edges) {
    int ia = resolve(a), ib = resolve(b);
    g.internal_edges.emplace_back(std::min(ia, ib), std::max(ia, ib));
  }
  for (const auto& l : legs) g.external_legs.push_back(resolve(l));
  std::sort(g.internal_edges.begin(), g.internal_edges.end());
  std::sort(g.external_legs.begin(), g.external_legs.end());
  validate(g);
  return g;
}

/// First Betti number |I| - |V| + 1 of a connected nonempty graph.
inline int loop_number(const FeynmanGraph& g) {
  if (g.empty()) throw domain_error("loop number of the empty graph is undefined");
  return g.edge_count() - g.vertex_count() + 1;
}

/// True iff deleting any single internal edge leaves the internal-edge
/// graph connected. Vacuously true without internal edges.
inline bool is_one_particle_irreducible(const FeynmanGraph& g) {
  if (g.empty()) throw domain_error("1PI is undefined for the empty graph");
  for (int e = 0; e < g.edge_count(); ++e)
    if (!detail::connected(g.vertex_count(), g.internal_edges, e)) return false;
  return true;
}

/// Divergent means: 1PI, at least one loop, and 2 or 3 external legs.
/// Loop-free graphs carry no divergence, so a bare vertex never counts.
inline bool is_divergent(const FeynmanGraph& g) {
  if (g.empty()) return false;
  if (g.leg_count() != 2 && g.leg_count() != 3) return false;
  if (loop_number(g) < 1) return false;
  return is_one_particle_irreducible(g);
}

/// The subgraph induced by `subset`, with boundary edges and host legs
/// re-read as its external legs.
inline FeynmanGraph induced_subgraph(const FeynmanGraph& g, const std::vector<int>& subset) {
  std::vector<int> pos(g.vertex_count(), -1);
  for (int i = 0; i < static_cast<int>(subset.size()); ++i) pos[subset[i]] = i;
  FeynmanGraph out;
  for (int v : subset) out.vertex_ids.push_back(g.vertex_ids[v]);
  for (const auto& [a, b] : g.internal_edges) {
    bool ina = pos[a] >= 0, inb = pos[b] >= 0;
    if (ina && inb)
      out.internal_edges.emplace_back(std::min(pos[a], pos[b]), std::max(pos[a], pos[b]));
    else if (ina)
      out.external_legs.push_back(pos[a]);
    else if (inb)
      out.external_legs.push_back(pos[b]);
  }
  for (int l : g.external_legs)
    if (pos[l] >= 0) out.external_legs.push_back(pos[l]);
  std::sort(out.internal_edges.begin(), out.internal_edges.end());
  std::sort(out.external_legs.begin(), out.external_legs.end());
  out.name = g.name.empty() ? "" : g.name + "[induced]";
  return out;
}

namespace detail {

/// Candidate components: vertex subsets inducing a connected divergent
/// 1PI subgraph. Proper subsets only; the full vertex set would be the
/// graph itself.
inline std::vector<std::vector<int>> component_candidates(const FeynmanGraph& g) {
  const int n = g.vertex_count();
  std::vector<std::vector<int>> out;
  if (n > 25) throw resource_error("graph too large for subgraph enumeration");
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    std::vector<int> subset;
    for (int v = 0; v < n; ++v)
      if (mask & (1u << v)) subset.push_back(v);
    if (subset.size() < 2) continue; // a divergent subgraph carries a loop
    FeynmanGraph sub = induced_subgraph(g, subset);
    if (!detail::connected(sub.vertex_count(), sub.internal_edges)) continue;
    if (is_divergent(sub)) out.push_back(std::move(subset));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline void disjoint_families(const std::vector<std::vector<int>>& cands, std::size_t from,
                              std::vector<std::vector<int>>& current,
                              std::vector<SubgraphEmbedding>& out) {
  for (std::size_t i = from; i < cands.size(); ++i) {
    bool disjoint = true;
    for (const auto& chosen : current) {
      std::vector<int> inter;
      std::set_intersection(chosen.begin(), chosen.end(), cands[i].begin(), cands[i].end(),
                            std::back_inserter(inter));
      if (!inter.empty()) {
        disjoint = false;
        break;
      }
    }
    if (!disjoint) continue;
    current.push_back(cands[i]);
    out.push_back(SubgraphEmbedding{current});
    disjoint_families(cands, i + 1, current, out);
    current.pop_back();
  }
}

} // namespace detail

/// Every proper admissible subgraph embedding of a 1PI host: each
/// component is a divergent 1PI induced subgraph, disjoint unions
/// included, the empty set and the host itself excluded. Distinct vertex
/// subsets (and distinct partitions into components) count separately.
inline std::vector<SubgraphEmbedding> admissible_subgraphs(const FeynmanGraph& g) {
  if (g.empty() || !is_one_particle_irreducible(g))
    throw domain_error("admissible subgraphs are defined for nonempty 1PI hosts");
  auto cands = detail::component_candidates(g);
  std::vector<SubgraphEmbedding> out;
  std::vector<std::vector<int>> current;
  detail::disjoint_families(cands, 0, current, out);
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

// One attachment point of a component: either an end of a crossing edge
// or one of the host's external legs.
struct EdgeEnd {
  int edge;
  int side; // 0 = first endpoint is inside, 1 = second
};
struct HostLeg {
  int vertex;
};
using BoundaryItem = std::variant<EdgeEnd, HostLeg>;

struct Terminal {
  bool is_leg = false;
  int node = -1; // output node index when !is_leg
};

} // namespace detail

/// Collapses each component of an admissible embedding: a 3-leg
/// component becomes a fresh valence-3 vertex, a 2-leg component becomes
/// a point on a propagator line (its two boundary attachments merge).
/// The result is a valid FeynmanGraph or a domain error (for instance
/// when merging would close a line into a self-loop).
inline FeynmanGraph contract(const FeynmanGraph& g, const SubgraphEmbedding& emb) {
  if (emb.empty()) return g;
  if (g.empty()) throw domain_error("cannot contract inside the empty graph");

  // Re-check admissibility: disjoint components, each induced divergent.
  std::vector<int> comp_of(g.vertex_count(), -1);
  for (int c = 0; c < static_cast<int>(emb.components.size()); ++c) {
    for (int v : emb.components[c]) {
      if (v < 0 || v >= g.vertex_count())
        throw domain_error("embedding vertex out of range");
      if (comp_of[v] != -1) throw domain_error("embedding components are not disjoint");
      comp_of[v] = c;
    }
    if (!is_divergent(induced_subgraph(g, emb.components[c])))
      throw domain_error("embedding component is not a divergent 1PI subgraph");
  }
  if (emb.components.size() == 1 &&
      static_cast<int>(emb.components[0].size()) == g.vertex_count())
    throw domain_error("cannot contract the full graph");

  const int ncomp = static_cast<int>(emb.components.size());

  // Boundary items per component.
  std::vector<std::vector<detail::BoundaryItem>> boundary(ncomp);
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.internal_edges[e];
    int ca = comp_of[a], cb = comp_of[b];
    if (ca == cb) continue; // either internal to a component or fully outside
    if (ca >= 0) boundary[ca].push_back(detail::EdgeEnd{e, 0});
    if (cb >= 0) boundary[cb].push_back(detail::EdgeEnd{e, 1});
  }
  for (std::size_t i = 0; i < g.external_legs.size(); ++i) {
    int c = comp_of[g.external_legs[i]];
    if (c >= 0) boundary[c].push_back(detail::HostLeg{g.external_legs[i]});
  }

  // Output nodes: outside vertices plus one fresh vertex per 3-leg component.
  FeynmanGraph out;
  std::vector<int> node_of_vertex(g.vertex_count(), -1);
  for (int v = 0; v < g.vertex_count(); ++v)
    if (comp_of[v] == -1) {
      node_of_vertex[v] = out.vertex_count();
      out.vertex_ids.push_back(g.vertex_ids[v]);
    }
  std::vector<int> node_of_comp(ncomp, -1);
  std::vector<bool> is_wire(ncomp, false);
  for (int c = 0; c < ncomp; ++c) {
    if (boundary[c].size() == 2) {
      is_wire[c] = true;
    } else if (boundary[c].size() == 3) {
      node_of_comp[c] = out.vertex_count();
      std::string id;
      for (int v : emb.components[c]) id += (id.empty() ? "" : "+") + g.vertex_ids[v];
      out.vertex_ids.push_back(id);
    } else {
      throw domain_error("component has " + std::to_string(boundary[c].size()) +
                         " boundary legs, expected 2 or 3");
    }
  }

  // Direct attachments of 3-leg components.
  for (int c = 0; c < ncomp; ++c) {
    if (is_wire[c]) continue;
    for (const auto& item : boundary[c])
      if (std::holds_alternative<detail::HostLeg>(item))
        out.external_legs.push_back(node_of_comp[c]);
  }
  for (int l : g.external_legs)
    if (comp_of[l] == -1) out.external_legs.push_back(node_of_vertex[l]);

  // Chase chains through 2-leg components. Each non-internal edge is
  // consumed exactly once.
  std::vector<char> edge_done(g.edge_count(), 0);
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.internal_edges[e];
    if (comp_of[a] == comp_of[b] && comp_of[a] != -1) edge_done[e] = 1; // internal
  }

  auto terminal_of = [&](int vertex) -> std::optional<detail::Terminal> {
    int c = comp_of[vertex];
    if (c == -1) return detail::Terminal{false, node_of_vertex[vertex]};
    if (!is_wire[c]) return detail::Terminal{false, node_of_comp[c]};
    return std::nullopt; // continues through a wire
  };

  auto other_item = [&](int c, const detail::BoundaryItem& item) -> detail::BoundaryItem {
    const auto& items = boundary[c];
    auto same = [&](const detail::BoundaryItem& x) {
      if (x.index() != item.index()) return false;
      if (std::holds_alternative<detail::EdgeEnd>(x)) {
        auto& p = std::get<detail::EdgeEnd>(x);
        auto& q = std::get<detail::EdgeEnd>(item);
        return p.edge == q.edge && p.side == q.side;
      }
      return std::get<detail::HostLeg>(x).vertex == std::get<detail::HostLeg>(item).vertex;
    };
    return same(items[0]) ? items[1] : items[0];
  };

  // Walks one chain starting inside wire component c via `item`; returns
  // the far terminal (node or host leg).
  auto walk = [&](int c, detail::BoundaryItem item) -> detail::Terminal {
    for (;;) {
      detail::BoundaryItem next = other_item(c, item);
      if (std::holds_alternative<detail::HostLeg>(next)) return detail::Terminal{true, -1};
      auto end = std::get<detail::EdgeEnd>(next);
      edge_done[end.edge] = 1;
      auto [a, b] = g.internal_edges[end.edge];
      int far = end.side == 0 ? b : a;
      if (auto term = terminal_of(far)) return *term;
      c = comp_of[far];
      item = detail::EdgeEnd{end.edge, end.side == 0 ? 1 : 0};
    }
  };

  auto emit = [&](const detail::Terminal& t1, const detail::Terminal& t2) {
    if (t1.is_leg && t2.is_leg)
      throw domain_error("contraction would consume the whole graph");
    if (t1.is_leg || t2.is_leg) {
      out.external_legs.push_back(t1.is_leg ? t2.node : t1.node);
      return;
    }
    if (t1.node == t2.node)
      throw domain_error("contraction would create a self-loop");
    out.internal_edges.emplace_back(std::min(t1.node, t2.node), std::max(t1.node, t2.node));
  };

  // Chains starting at a host leg attached to a wire component.
  for (int c = 0; c < ncomp; ++c) {
    if (!is_wire[c]) continue;
    for (const auto& item : boundary[c]) {
      if (!std::holds_alternative<detail::HostLeg>(item)) continue;
      emit(detail::Terminal{true, -1}, walk(c, item));
    }
  }
  // Chains (or plain edges) starting at a node-side edge end.
  for (int e = 0; e < g.edge_count(); ++e) {
    if (edge_done[e]) continue;
    auto [a, b] = g.internal_edges[e];
    auto ta = terminal_of(a), tb = terminal_of(b);
    if (!ta && !tb) continue; // wire-to-wire edge, reached from elsewhere or a cycle
    edge_done[e] = 1;
    detail::Terminal t1 = ta ? *ta : *tb;
    int far = ta ? b : a;
    detail::Terminal t2 = terminal_of(far)
                              ? *terminal_of(far)
                              : walk(comp_of[far], detail::EdgeEnd{e, ta ? 1 : 0});
    emit(t1, t2);
  }
  for (int e = 0; e < g.edge_count(); ++e)
    if (!edge_done[e])
      throw domain_error("contraction collapses a closed chain to a vacuum loop");

  std::sort(out.internal_edges.begin(), out.internal_edges.end());
  std::sort(out.external_legs.begin(), out.external_legs.end());
  out.name = "";
  validate(out);
  return out;
}

/// Canonical key: equal exactly for isomorphic multigraphs with matching
/// external-leg multiplicities. Exhaustive minimization over vertex
/// permutations within (leg count, internal degree) classes.
inline std::string canonical_form(const FeynmanGraph& g) {
  if (g.empty()) return "empty";
  const int n = g.vertex_count();
  if (n > limits().vertex_cap)
    throw resource_error("graph '" + g.name + "' has " + std::to_string(n) +
                         " vertices, above the canonical-form cap " +
                         std::to_string(limits().vertex_cap));

  std::vector<std::pair<std::pair<int, int>, int>> keyed(n);
  for (int v = 0; v < n; ++v)
    keyed[v] = {{detail::leg_count_at(g, v), detail::internal_degree(g, v)}, v};
  std::sort(keyed.begin(), keyed.end());

  // Blocks of interchangeable vertices.
  std::vector<std::pair<int, int>> blocks; // [begin, end) into keyed
  for (int i = 0; i < n;) {
    int j = i;
    while (j < n && keyed[j].first == keyed[i].first) ++j;
    blocks.emplace_back(i, j);
    i = j;
  }

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = keyed[i].second;

  std::string best;
  auto encode = [&](const std::vector<int>& ord) {
    std::vector<int> pos(n);
    for (int i = 0; i < n; ++i) pos[ord[i]] = i;
    std::vector<std::pair<int, int>> edges;
    edges.reserve(g.internal_edges.size());
    for (const auto& [a, b] : g.internal_edges)
      edges.emplace_back(std::min(pos[a], pos[b]), std::max(pos[a], pos[b]));
    std::sort(edges.begin(), edges.end());
    std::vector<int> legs;
    legs.reserve(g.external_legs.size());
    for (int l : g.external_legs) legs.push_back(pos[l]);
    std::sort(legs.begin(), legs.end());
    std::string s = "V" + std::to_string(n) + "|E";
    for (const auto& [a, b] : edges)
      s += "(" + std::to_string(a) + "," + std::to_string(b) + ")";
    s += "|L";
    for (int l : legs) s += std::to_string(l) + ",";
    return s;
  };

  // Odometer over per-block permutations.
  std::vector<std::vector<int>> block_perm(blocks.size());
  for (std::size_t k = 0; k < blocks.size(); ++k)
    for (int i = blocks[k].first; i < blocks[k].second; ++i)
      block_perm[k].push_back(order[i]);

  std::vector<int> ord(n);
  auto assemble = [&]() {
    int i = 0;
    for (const auto& bp : block_perm)
      for (int v : bp) ord[i++] = v;
  };
  for (;;) {
    assemble();
    std::string s = encode(ord);
    if (best.empty() || s < best) best = s;
    std::size_t k = 0;
    while (k < block_perm.size() &&
           !std::next_permutation(block_perm[k].begin(), block_perm[k].end()))
      ++k;
    if (k == block_perm.size()) break;
  }
  return best;
}

} // namespace renorm
