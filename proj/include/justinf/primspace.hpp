#pragma once

// Finite T0-space combinatorics for the model primitive-ideal spaces Y_n:
// one dense point plus n closed points, closed sets being the empty set,
// the whole space, and every subset of the closed points.
//
// Spaces are stored as explicit closed-set families over bitmasks; the
// constructor rejects families that are not lattices or not T0 instead of
// completing them.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace justinf::space {

using PointSet = std::uint32_t;  // bitmask over the points

class FiniteT0Space {
 public:
  // Validates: empty and full sets present, closure under pairwise union
  // and intersection, T0 separation.
  static FiniteT0Space create(std::vector<std::string> points, std::vector<PointSet> closed_sets);

  const std::vector<std::string>& points() const { return points_; }
  const std::vector<PointSet>& closed_sets() const { return closed_sets_; }
  std::size_t point_count() const { return points_.size(); }
  PointSet full_set() const { return full_; }

  bool is_closed(PointSet s) const;
  // Smallest closed superset.
  PointSet closure(PointSet s) const;

  bool operator==(const FiniteT0Space&) const = default;

 private:
  std::vector<std::string> points_;
  std::vector<PointSet> closed_sets_;  // sorted, duplicate-free
  PointSet full_ = 0;
};

// Points {0, 1, ..., n}; closed sets: empty, everything, and all subsets
// of {1, ..., n}.
FiniteT0Space build_yn(int n);

// Family-level checks usable before a space object exists (the negative
// branches reject inputs the FiniteT0Space constructor would refuse).
bool family_is_lattice(std::size_t point_count, const std::vector<PointSet>& closed_sets,
                       std::string* why = nullptr);
bool family_is_t0(std::size_t point_count, const std::vector<PointSet>& closed_sets);

// Prime (irreducible) closed sets are nonempty by convention.
bool is_prime_closed(const FiniteT0Space& s, PointSet closed_set);
bool family_set_is_prime(const std::vector<PointSet>& closed_sets, PointSet f);

// Every prime closed set is a singleton closure.
bool is_spectral(const FiniteT0Space& s);
bool family_is_spectral(std::size_t point_count, const std::vector<PointSet>& closed_sets);

// Recognizes the spaces built by build_yn up to homeomorphism: some point
// is dense and the closed sets are exactly the subsets avoiding it, plus
// the whole space. Returns the number of closed points.
std::optional<int> classify_yn(const FiniteT0Space& s);

}  // namespace justinf::space
