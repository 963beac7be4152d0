#pragma once

// Bratteli diagrams as data: the canonical just-infinite RFD diagram (one
// new vertex per level, fed by everything above), the two-halves strictly
// RFD diagram, diagram ideals with the two closure conditions, quotients,
// limit-dimension semi-decisions, and brute-force ideal enumeration.
//
// Levels are 1-based in the mathematics and 0-based in the storage arrays;
// vertices are addressed by (level index, position within level).

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "justinf/caps.hpp"

namespace justinf::bratteli {

struct Edge {
  int from = 0;  // position at level i
  int to = 0;    // position at level i+1
  int mult = 1;
  auto operator<=>(const Edge&) const = default;
};

struct BratteliDiagram {
  std::vector<std::vector<long long>> dims;   // dims[i]: matrix sizes at level i+1
  std::vector<std::vector<Edge>> edges;       // edges[i]: level i+1 -> level i+2
  std::vector<std::vector<std::string>> labels;
  std::string rule;                           // "y_infty", "strictly_rfd" or ""

  // Growth metadata set by the builders; exact limit claims are only made
  // when one of these is present.
  bool monotone_growth = false;  // sum of squared dims strictly increases forever
  int stable_from = 0;           // >0: levels repeat verbatim from this level on

  int depth() const { return static_cast<int>(dims.size()); }
  long long level_dimension(int level) const;  // sum of squared dims
  void validate() const;
  bool operator==(const BratteliDiagram&) const = default;
};

struct DiagramIdeal {
  std::vector<std::set<int>> members;  // per level, positions
  std::string description;
  int stable_from = 0;  // >0: complement repeats verbatim from this level on

  bool empty() const;
  std::size_t vertex_count() const;
  bool operator==(const DiagramIdeal&) const = default;
};

struct IdealViolation {
  enum class Kind { heredity, saturation };
  Kind kind = Kind::heredity;
  int level = 0;  // 1-based level of the source vertex
  int from = 0;
  int to = -1;  // target position for heredity violations
};

// The diagram with n vertices at level n: every vertex keeps a single edge
// to its own column and feeds the one new vertex of the next level.
BratteliDiagram build_y_infty(int depth);

// Two coupled copies of the same pattern: the left half is an essential
// ideal, the right half is the quotient by it, and the first column of the
// right half feeds the left half's new vertices.
BratteliDiagram build_strictly_rfd(int depth);

// Vertex positions in the built diagrams (k, j are 1-based columns).
int y_position(int k);
int strictly_rfd_left_position(int k);
int strictly_rfd_right_position(int level, int j);

// Heredity and saturation check; the deepest materialized level is checked
// for heredity only (saturation needs the next level's edges).
std::optional<IdealViolation> check_ideal(const BratteliDiagram& d,
                                          const std::vector<std::set<int>>& members);
bool is_ideal(const BratteliDiagram& d, const std::vector<std::set<int>>& members);

// The ideal of the canonical diagram attached to the open set that omits
// the finite column set F: {(n,k) : k not in F, n >= max F}.
DiagramIdeal ideal_from_open_set(const BratteliDiagram& d, const std::set<int>& omitted);

// All vertices with no descending path into S (the largest ideal avoiding
// S), by backward reachability.
DiagramIdeal largest_ideal_avoiding(const BratteliDiagram& d,
                                    const std::vector<std::set<int>>& avoid,
                                    std::string description = {});

// The left half of the strictly RFD diagram, and its largest ideal that
// avoids column k of the left half.
DiagramIdeal strictly_rfd_left_ideal(const BratteliDiagram& d);
DiagramIdeal strictly_rfd_column_ideal(const BratteliDiagram& d, int k);

// Induced diagram on the complement; dimensions are inherited (heredity
// guarantees no incoming edge is lost) and compatibility is re-verified.
BratteliDiagram quotient(const BratteliDiagram& d, const DiagramIdeal& u);

struct LimitDimension {
  enum class Kind { finite, infinite, undetermined };
  Kind kind = Kind::undetermined;
  std::vector<long long> dims;  // filled for finite verdicts
  bool operator==(const LimitDimension&) const = default;
};

// Semi-decision for the inductive limit: "finite" needs an isomorphism tail
// within the horizon plus the builder's periodicity claim; "infinite" needs
// strictly growing level dimensions plus the monotone growth flag.
LimitDimension limit_dimension(const BratteliDiagram& d, int horizon);

// Matrix sizes of the primitive quotients of the canonical diagram for
// j = 1..j_max (the characteristic sequence).
std::vector<long long> primitive_quotient_sizes(const BratteliDiagram& d, int j_max);

// Brute force over all vertex subsets of the depth-truncated diagram.
std::vector<DiagramIdeal> enumerate_ideals(const BratteliDiagram& d, int depth,
                                           const Caps& caps = default_caps());

// True when u meets every nonempty ideal enumerated at enum_depth, after
// extending each hereditarily through the full materialized diagram.
bool is_essential(const BratteliDiagram& d, const DiagramIdeal& u, int enum_depth,
                  const Caps& caps = default_caps());

std::string to_dot(const BratteliDiagram& d, const DiagramIdeal* mark = nullptr);

}  // namespace justinf::bratteli
