#pragma once

namespace renorm {

/// Per-run limits. Set once at startup (CLI flags or test setup); all
/// series and graph operations read them.
struct Limits {
  int truncation = 6; ///< default z-truncation order of new series
  int pole_cap = 6;   ///< maximum pole order a product may produce
  int vertex_cap = 10; ///< maximum vertex count for canonical labeling
};

inline Limits& limits() {
  static Limits instance;
  return instance;
}

} // namespace renorm
