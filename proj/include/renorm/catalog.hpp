#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "renorm/graph.hpp"

namespace renorm {

/// The generating set of the Hopf algebra: a finite store of pairwise
/// non-isomorphic 1PI graphs keyed by canonical form. Loop-free graphs
/// are the unit and are rejected as generators.
class GraphCatalog {
public:
  struct Entry {
    std::string name;
    FeynmanGraph graph;
    std::string key;
    int degree;
  };

  void add(const FeynmanGraph& g) {
    validate(g);
    if (g.empty()) throw domain_error("the empty graph is the Hopf unit, not a generator");
    if (!is_one_particle_irreducible(g))
      throw domain_error("catalog graph '" + g.name + "' is not 1PI");
    int degree = loop_number(g);
    if (degree < 1)
      throw domain_error("catalog graph '" + g.name + "' has no loops; it is the Hopf unit");
    std::string key = canonical_form(g);
    if (auto it = by_key_.find(key); it != by_key_.end())
      throw domain_error("catalog graphs '" + entries_[it->second].name + "' and '" + g.name +
                         "' are isomorphic");
    std::string name = g.name.empty() ? "graph" + std::to_string(entries_.size()) : g.name;
    if (by_name_.count(name))
      throw domain_error("duplicate graph name '" + name + "' in catalog");
    Entry e{name, g, key, degree};
    e.graph.name = name;
    by_key_[key] = entries_.size();
    by_name_[name] = entries_.size();
    entries_.push_back(std::move(e));
    resort();
  }

  const std::vector<Entry>& entries() const { return entries_; }

  bool contains_key(const std::string& key) const { return by_key_.count(key) != 0; }

  const Entry& by_key(const std::string& key) const {
    auto it = by_key_.find(key);
    if (it == by_key_.end())
      throw coverage_error("catalog has no graph with canonical key '" + key + "'");
    return entries_[it->second];
  }

  const Entry& by_name(const std::string& name) const {
    auto it = by_name_.find(name);
    if (it == by_name_.end())
      throw coverage_error("catalog has no graph named '" + name + "'");
    return entries_[it->second];
  }

  bool contains_name(const std::string& name) const { return by_name_.count(name) != 0; }

  /// Maximum loop number stored.
  int degree_bound() const {
    int d = 0;
    for (const auto& e : entries_) d = std::max(d, e.degree);
    return d;
  }

  std::size_t size() const { return entries_.size(); }

private:
  // Keep entries in (degree, key) order so every per-generator loop in
  // the library and the CLI is deterministic.
  void resort() {
    std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
      return std::tie(a.degree, a.key) < std::tie(b.degree, b.key);
    });
    by_key_.clear();
    by_name_.clear();
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      by_key_[entries_[i].key] = i;
      by_name_[entries_[i].name] = i;
    }
  }

  std::vector<Entry> entries_;
  std::map<std::string, std::size_t> by_key_;
  std::map<std::string, std::size_t> by_name_;
};

using CatalogPtr = std::shared_ptr<const GraphCatalog>;

} // namespace renorm
