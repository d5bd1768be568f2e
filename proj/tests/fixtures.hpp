#pragma once

#include <memory>

#include "renorm/catalog.hpp"
#include "renorm/graph.hpp"

namespace fixtures {

using renorm::FeynmanGraph;
using renorm::make_graph;

// One-loop self-energy: double edge, one leg per vertex.
inline FeynmanGraph se1() {
  return make_graph("se1", {"a", "b"}, {{"a", "b"}, {"a", "b"}}, {"a", "b"});
}

// One-loop triangle vertex correction.
inline FeynmanGraph tri1() {
  return make_graph("tri1", {"a", "b", "c"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}},
                    {"a", "b", "c"});
}

// Two-loop nested self-energy: se1 inserted on one internal line of se1.
inline FeynmanGraph se2() {
  return make_graph("se2", {"a", "c", "d", "b"},
                    {{"a", "c"}, {"c", "d"}, {"c", "d"}, {"d", "b"}, {"a", "b"}},
                    {"a", "b"});
}

// Two-loop overlapping self-energy (theta graph with two legs).
inline FeynmanGraph se2o() {
  return make_graph("se2o", {"a", "b", "c", "d"},
                    {{"a", "c"}, {"a", "d"}, {"c", "b"}, {"d", "b"}, {"c", "d"}},
                    {"a", "b"});
}

// Triangle with a self-energy inserted on one side.
inline FeynmanGraph tri2a() {
  return make_graph("tri2a", {"a", "u", "v", "b", "c"},
                    {{"a", "u"}, {"u", "v"}, {"u", "v"}, {"v", "b"}, {"b", "c"}, {"c", "a"}},
                    {"a", "b", "c"});
}

// Triangle with a vertex correction at one corner.
inline FeynmanGraph tri2c() {
  return make_graph("tri2c", {"u", "v", "w", "b", "c"},
                    {{"u", "v"}, {"v", "w"}, {"w", "u"}, {"v", "b"}, {"w", "c"}, {"b", "c"}},
                    {"u", "b", "c"});
}

// Three-loop triangle with self-energy insertions on two sides: carries
// two disjoint one-loop subgraphs.
inline FeynmanGraph tri3d() {
  return make_graph("tri3d", {"a", "u", "v", "b", "w", "x", "c"},
                    {{"a", "u"},
                     {"u", "v"},
                     {"u", "v"},
                     {"v", "b"},
                     {"b", "w"},
                     {"w", "x"},
                     {"w", "x"},
                     {"x", "c"},
                     {"c", "a"}},
                    {"a", "b", "c"});
}

/// The bundled two-loop catalog.
inline renorm::CatalogPtr catalog2() {
  auto cat = std::make_shared<renorm::GraphCatalog>();
  cat->add(se1());
  cat->add(tri1());
  cat->add(se2());
  cat->add(se2o());
  cat->add(tri2a());
  cat->add(tri2c());
  return cat;
}

/// Two-loop catalog extended by the degree-3 double-insertion graph.
inline renorm::CatalogPtr catalog3() {
  auto cat = std::make_shared<renorm::GraphCatalog>();
  cat->add(se1());
  cat->add(tri1());
  cat->add(se2());
  cat->add(se2o());
  cat->add(tri2a());
  cat->add(tri2c());
  cat->add(tri3d());
  return cat;
}

/// Minimal catalog with the nested chain only.
inline renorm::CatalogPtr catalog_se() {
  auto cat = std::make_shared<renorm::GraphCatalog>();
  cat->add(se1());
  cat->add(se2());
  return cat;
}

} // namespace fixtures
