#pragma once

#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "renorm/character.hpp"

namespace renorm {

using json = nlohmann::json;

namespace detail {

inline json parse_json_text(const std::string& text, const std::string& where) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw parse_error("invalid JSON in " + where);
  return j;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Rational rational_from_json(const json& j, const std::string& where) {
  if (j.is_string()) return rational_from_string(j.get<std::string>());
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<long long>()));
  throw parse_error("expected a rational (string \"p/q\" or integer) in " + where);
}

} // namespace detail

/// One graph per document: name, vertices, internal_edges (vertex-id
/// pairs, repeats make multi-edges), external_legs (vertex ids, repeats
/// allowed). Invariant violations are reported with the offending
/// element and surface as parse errors.
inline FeynmanGraph graph_from_json(const json& j) {
  if (!j.is_object()) throw parse_error("graph document must be a JSON object");
  std::string name = j.value("name", std::string{});
  if (!j.contains("vertices") || !j["vertices"].is_array())
    throw parse_error("graph '" + name + "' needs a 'vertices' array");
  std::vector<std::string> vertices;
  for (const auto& v : j["vertices"]) {
    if (!v.is_string()) throw parse_error("vertex ids must be strings in graph '" + name + "'");
    vertices.push_back(v.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (const auto& e : j.value("internal_edges", json::array())) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
      throw parse_error("internal edges must be 2-element vertex-id lists in graph '" + name +
                        "'");
    edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  std::vector<std::string> legs;
  for (const auto& l : j.value("external_legs", json::array())) {
    if (!l.is_string()) throw parse_error("external legs must be vertex ids in graph '" + name + "'");
    legs.push_back(l.get<std::string>());
  }
  try {
    return make_graph(std::move(name), std::move(vertices), edges, legs);
  } catch (const domain_error& e) {
    throw parse_error(e.what());
  }
}

inline FeynmanGraph parse_graph(const std::string& text) {
  return graph_from_json(detail::parse_json_text(text, "graph document"));
}

/// Accepts a single graph object, an object with a "graphs" array, or a
/// bare array of graph objects.
inline std::vector<FeynmanGraph> graphs_from_json(const json& j) {
  std::vector<FeynmanGraph> out;
  if (j.is_array()) {
    for (const auto& g : j) out.push_back(graph_from_json(g));
  } else if (j.is_object() && j.contains("graphs")) {
    if (!j["graphs"].is_array()) throw parse_error("'graphs' must be an array");
    for (const auto& g : j["graphs"]) out.push_back(graph_from_json(g));
  } else {
    out.push_back(graph_from_json(j));
  }
  return out;
}

inline CatalogPtr load_catalog(const std::vector<std::string>& paths) {
  auto cat = std::make_shared<GraphCatalog>();
  for (const auto& path : paths) {
    json j = detail::parse_json_text(detail::read_file(path), "'" + path + "'");
    for (const auto& g : graphs_from_json(j)) cat->add(g);
  }
  return cat;
}

/// Series literal: [[z_power, [q0, q1, ...]], ...] where qk is the
/// coefficient of L^k.
inline LaurentSeries series_from_json(const json& j, int truncation,
                                      const std::string& where) {
  if (!j.is_array()) throw parse_error("series for " + where + " must be an array of terms");
  LaurentSeries out(truncation);
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 2 || !term[0].is_number_integer() ||
        !term[1].is_array())
      throw parse_error("series term for " + where + " must be [z_power, [coeffs...]]");
    int power = term[0].get<int>();
    if (power > truncation)
      throw parse_error("series term z^" + std::to_string(power) + " for " + where +
                        " lies above truncation order " + std::to_string(truncation));
    std::vector<Rational> coeffs;
    for (const auto& c : term[1]) coeffs.push_back(detail::rational_from_json(c, where));
    if (!out.coeff(power).is_zero())
      throw parse_error("duplicate z-power " + std::to_string(power) + " for " + where);
    out.set_coeff(power, LogPoly::from_coeffs(std::move(coeffs)));
  }
  return out;
}

inline json series_to_json(const LaurentSeries& s) {
  json out = json::array();
  for (const auto& [p, c] : s.terms()) {
    json coeffs = json::array();
    for (const auto& q : c.coeffs()) coeffs.push_back(rational_to_string(q));
    out.push_back(json::array({p, coeffs}));
  }
  return out;
}

struct SchemeFile {
  std::string name;
  int truncation = 0;
  Character character;
};

/// Character file: scheme_name, truncation_order, values keyed by graph
/// name and resolved through the catalog.
inline SchemeFile scheme_from_json(const json& j, const CatalogPtr& catalog,
                                   std::optional<int> truncation_override = std::nullopt) {
  if (!j.is_object()) throw parse_error("scheme file must be a JSON object");
  if (!j.contains("scheme_name") || !j["scheme_name"].is_string())
    throw parse_error("scheme file needs a 'scheme_name' string");
  std::string name = j["scheme_name"].get<std::string>();
  if (!j.contains("truncation_order") || !j["truncation_order"].is_number_integer())
    throw parse_error("scheme '" + name + "' needs an integer 'truncation_order'");
  int trunc = truncation_override.value_or(j["truncation_order"].get<int>());
  if (trunc < 1) throw parse_error("scheme '" + name + "' needs truncation order >= 1");
  if (!j.contains("values") || !j["values"].is_object())
    throw parse_error("scheme '" + name + "' needs a 'values' object");

  Character chi(catalog, trunc);
  for (const auto& [graph_name, series] : j["values"].items()) {
    const auto& entry = catalog->by_name(graph_name); // lookup error if unknown
    LaurentSeries v = series_from_json(series, j["truncation_order"].get<int>(),
                                       "'" + graph_name + "' in scheme '" + name + "'");
    chi.set_value(Generator{entry.key, entry.degree}, v.truncate_to(trunc));
  }
  return {std::move(name), trunc, std::move(chi)};
}

inline SchemeFile load_scheme(const std::string& path, const CatalogPtr& catalog,
                              std::optional<int> truncation_override = std::nullopt) {
  json j = detail::parse_json_text(detail::read_file(path), "'" + path + "'");
  return scheme_from_json(j, catalog, truncation_override);
}

inline json character_to_json(const Character& chi, const std::string& scheme_name) {
  json values = json::object();
  for (const auto& e : chi.catalog().entries()) {
    Generator g{e.key, e.degree};
    if (chi.covers(g)) values[e.name] = series_to_json(chi.value(g));
  }
  return json{{"scheme_name", scheme_name},
              {"truncation_order", chi.truncation()},
              {"values", values}};
}

} // namespace renorm
