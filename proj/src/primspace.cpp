#include "justinf/primspace.hpp"

#include <algorithm>
#include <set>

#include "justinf/errors.hpp"

namespace justinf::space {

namespace {

constexpr std::size_t kMaxPoints = 25;

bool contains(const std::vector<PointSet>& sorted, PointSet s) {
  return std::binary_search(sorted.begin(), sorted.end(), s);
}

}  // namespace

FiniteT0Space FiniteT0Space::create(std::vector<std::string> points,
                                    std::vector<PointSet> closed_sets) {
  if (points.empty()) throw DomainError("a space needs at least one point");
  if (points.size() > kMaxPoints) throw DomainError("too many points (max 25)");
  std::set<std::string> names(points.begin(), points.end());
  if (names.size() != points.size()) throw DomainError("duplicate point names");

  FiniteT0Space s;
  s.points_ = std::move(points);
  s.full_ = static_cast<PointSet>((std::uint64_t{1} << s.points_.size()) - 1);

  std::sort(closed_sets.begin(), closed_sets.end());
  closed_sets.erase(std::unique(closed_sets.begin(), closed_sets.end()), closed_sets.end());
  for (PointSet c : closed_sets) {
    if ((c & ~s.full_) != 0) throw DomainError("closed set names a point outside the space");
  }
  s.closed_sets_ = std::move(closed_sets);

  std::string why;
  if (!family_is_lattice(s.points_.size(), s.closed_sets_, &why)) throw DomainError(why);
  if (!family_is_t0(s.points_.size(), s.closed_sets_)) {
    throw DomainError("not T0: two points share every closed set");
  }
  return s;
}

bool FiniteT0Space::is_closed(PointSet set) const { return contains(closed_sets_, set); }

PointSet FiniteT0Space::closure(PointSet s) const {
  PointSet acc = full_;
  for (PointSet c : closed_sets_) {
    if ((s & ~c) == 0) acc &= c;
  }
  return acc;
}

FiniteT0Space build_yn(int n) {
  if (n < 0) throw DomainError("n must be >= 0");
  if (n > 20) throw DomainError("n capped at 20");
  std::vector<std::string> points;
  for (int i = 0; i <= n; ++i) points.push_back(std::to_string(i));
  // closed: every subset of {1..n} (shifted one bit past point 0), plus X
  std::vector<PointSet> closed;
  for (PointSet sub = 0; sub < (PointSet{1} << n); ++sub) closed.push_back(sub << 1);
  closed.push_back(static_cast<PointSet>((std::uint64_t{1} << (n + 1)) - 1));
  return FiniteT0Space::create(std::move(points), std::move(closed));
}

bool family_is_lattice(std::size_t point_count, const std::vector<PointSet>& closed_sets,
                       std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  PointSet full = static_cast<PointSet>((std::uint64_t{1} << point_count) - 1);
  std::vector<PointSet> sorted = closed_sets;
  std::sort(sorted.begin(), sorted.end());
  if (!contains(sorted, 0)) return fail("closed family misses the empty set");
  if (!contains(sorted, full)) return fail("closed family misses the whole space");
  for (PointSet a : sorted) {
    for (PointSet b : sorted) {
      if (!contains(sorted, a | b)) return fail("closed family is not closed under union");
      if (!contains(sorted, a & b)) {
        return fail("closed family is not closed under intersection");
      }
    }
  }
  return true;
}

bool family_is_t0(std::size_t point_count, const std::vector<PointSet>& closed_sets) {
  // distinct points must have distinct closures
  for (std::size_t p = 0; p < point_count; ++p) {
    for (std::size_t q = p + 1; q < point_count; ++q) {
      bool separated = false;
      for (PointSet c : closed_sets) {
        bool has_p = (c >> p) & 1u;
        bool has_q = (c >> q) & 1u;
        if (has_p != has_q) {
          separated = true;
          break;
        }
      }
      if (!separated) return false;
    }
  }
  return true;
}

bool family_set_is_prime(const std::vector<PointSet>& closed_sets, PointSet f) {
  if (f == 0) return false;  // prime sets are nonempty
  for (PointSet a : closed_sets) {
    for (PointSet b : closed_sets) {
      if ((f & ~(a | b)) != 0) continue;  // not a cover
      if ((f & ~a) != 0 && (f & ~b) != 0) return false;
    }
  }
  return true;
}

bool is_prime_closed(const FiniteT0Space& s, PointSet closed_set) {
  if (!s.is_closed(closed_set)) throw DomainError("the given set is not closed");
  return family_set_is_prime(s.closed_sets(), closed_set);
}

bool family_is_spectral(std::size_t point_count, const std::vector<PointSet>& closed_sets) {
  // singleton closures
  std::vector<PointSet> closures;
  PointSet full = static_cast<PointSet>((std::uint64_t{1} << point_count) - 1);
  for (std::size_t p = 0; p < point_count; ++p) {
    PointSet acc = full;
    for (PointSet c : closed_sets) {
      if ((c >> p) & 1u) acc &= c;
    }
    closures.push_back(acc);
  }
  for (PointSet f : closed_sets) {
    if (f == 0) continue;
    if (!family_set_is_prime(closed_sets, f)) continue;
    if (std::find(closures.begin(), closures.end(), f) == closures.end()) return false;
  }
  return true;
}

bool is_spectral(const FiniteT0Space& s) {
  return family_is_spectral(s.point_count(), s.closed_sets());
}

std::optional<int> classify_yn(const FiniteT0Space& s) {
  const std::size_t n_points = s.point_count();
  for (std::size_t x0 = 0; x0 < n_points; ++x0) {
    if (s.closure(PointSet{1} << x0) != s.full_set()) continue;
    // closed sets must be exactly: all subsets of X minus {x0}, plus X
    PointSet rest = static_cast<PointSet>(s.full_set() & ~(PointSet{1} << x0));
    std::size_t expect = (std::size_t{1} << (n_points - 1)) + 1;
    if (s.closed_sets().size() != expect) continue;
    bool ok = true;
    for (PointSet c : s.closed_sets()) {
      if (c == s.full_set()) continue;
      if ((c & ~rest) != 0) {
        ok = false;
        break;
      }
    }
    if (ok) return static_cast<int>(n_points) - 1;
  }
  return std::nullopt;
}

}  // namespace justinf::space
