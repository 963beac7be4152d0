#pragma once

#include <cstdint>

namespace justinf {

// Resource caps honored by every operation that materializes exponentially
// sized data. Defaults are desk scale; the CLI can override them per
// invocation (flags or JUSTINF_* environment variables).
struct Caps {
  // Maximum matrix-recursion depth: block matrices grow as 2^depth.
  int depth_cap = 12;
  // Maximum tree level for permutation-group closures (BFS over up to
  // ~4e6 elements at level 5).
  int group_level_cap = 5;
  // Maximum tree level for dense rational level matrices (2^level square).
  int matrix_level_cap = 8;
  // Brute-force ideal enumeration guard (2^vertices subsets scanned).
  int ideal_enum_vertex_cap = 20;
  // Entry cap for the word-problem memo cache.
  std::size_t trivial_cache_cap = std::size_t{1} << 20;
};

inline const Caps& default_caps() {
  static const Caps caps{};
  return caps;
}

}  // namespace justinf
