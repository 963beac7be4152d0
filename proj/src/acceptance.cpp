#include "justinf/acceptance.hpp"

#include <functional>
#include <optional>
#include <random>
#include <sstream>

#include "justinf/algebra.hpp"
#include "justinf/bratteli.hpp"
#include "justinf/grig.hpp"
#include "justinf/k0.hpp"
#include "justinf/primspace.hpp"

namespace justinf::acceptance {

namespace {

using alg::AlgebraElement;
using alg::BlockMatrix;
using alg::LevelMatrix;
using alg::Rational;
using grig::GroupElement;

GroupElement ge(const std::string& w) { return GroupElement::parse(w); }

int next_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

GroupElement random_word(std::mt19937_64& rng, int max_len) {
  static const char letters[] = {'a', 'b', 'c', 'd'};
  int len = next_int(rng, 0, max_len);
  std::string w;
  for (int i = 0; i < len; ++i) w.push_back(letters[next_int(rng, 0, 3)]);
  return GroupElement::parse(w);
}

AlgebraElement random_element(std::mt19937_64& rng, int max_terms, int max_len) {
  AlgebraElement x;
  int terms = next_int(rng, 1, max_terms);
  for (int i = 0; i < terms; ++i) {
    int c = next_int(rng, -3, 3);
    if (c == 0) c = 1;
    x.add_term(random_word(rng, max_len), c);
  }
  return x;
}

AlgebraElement kernel_element() {
  AlgebraElement one_minus_d = AlgebraElement::one();
  one_minus_d.add_term(ge("d"), -1);
  return one_minus_d * AlgebraElement::word(ge("a")) * one_minus_d;
}

std::optional<alg::ScalarWitness> scan_for_scalar(const AlgebraElement& x, int max_depth) {
  for (int d = 0; d <= max_depth; ++d) {
    BlockMatrix m = alg::psi_iterate(x, d);
    for (const auto& [pos, e] : m.entries) {
      if (auto lambda = e.as_scalar()) return alg::ScalarWitness{d, pos.first, pos.second, *lambda};
    }
  }
  return std::nullopt;
}

struct Checker {
  bool ok = true;
  std::ostringstream note;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note.str("");
      note << "failed: " << what;
    }
  }
};

CriterionResult run_one(const std::string& id, const std::string& title,
                        const std::function<void(Checker&)>& body) {
  CriterionResult r{id, title, false, ""};
  Checker c;
  try {
    body(c);
    r.pass = c.ok;
    r.detail = c.note.str();
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("exception: ") + e.what();
  }
  return r;
}

void ac1(Checker& c) {
  AlgebraElement z = kernel_element();
  auto cert = alg::is_zero_in_B(z);
  c.require(cert.in_kernel, "(1-d)a(1-d) is not reported in the kernel");
  c.require(cert.depth == 1, "certificate depth is not 1");
  const char* words[4] = {"a", "da", "ad", "dad"};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      c.require(!grig::equal(ge(words[i]), ge(words[j])),
                std::string(words[i]) + " and " + words[j] + " coincide in the group");
    }
  }
  if (c.ok) c.note << "certificate depth 1; the four words are pairwise distinct";
}

void ac2(Checker& c) {
  for (int family : {0, 1}) {
    for (int k = 0; k <= 4; ++k) {
      c.require(grig::is_trivial(grig::lysenok_relator(family, k)),
                "relator family " + std::to_string(family) + ", k=" + std::to_string(k));
    }
  }
  for (const char* w : {"a", "b", "c", "d", "ab", "ad"}) {
    c.require(!grig::is_trivial(ge(w)), std::string(w) + " reported trivial");
  }
  c.require(grig::equal(ge("d"), ge("bc")), "d != bc");
  if (c.ok) c.note << "10 relators trivial; 6 non-relators nontrivial; d = bc";
}

void ac3(Checker& c, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0xac3);
  for (int i = 0; i < 200 && c.ok; ++i) {
    AlgebraElement x = random_element(rng, 5, 8);
    AlgebraElement y = random_element(rng, 5, 8);
    for (int n = 0; n <= 5; ++n) {
      if (alg::pi_level(x * y, n) != alg::pi_level(x, n) * alg::pi_level(y, n)) {
        c.require(false, "multiplicativity at level " + std::to_string(n));
        break;
      }
    }
    BlockMatrix blocks = alg::psi_expand(x);
    for (int n = 0; n <= 4 && c.ok; ++n) {
      LevelMatrix direct = alg::pi_level(x, n + 1);
      LevelMatrix glued = LevelMatrix::zeros(n + 1);
      const long half = 1L << n;
      for (const auto& [pos, e] : blocks.entries) {
        LevelMatrix sub = alg::pi_level(e, n);
        for (long r = 0; r < half; ++r) {
          for (long col = 0; col < half; ++col) {
            glued.at(pos.first * half + r, pos.second * half + col) = sub.at(r, col);
          }
        }
      }
      c.require(direct == glued, "recursion agreement at level " + std::to_string(n + 1));
    }
  }
  if (c.ok) c.note << "200 pairs, levels <= 5, exact";
}

void ac4(Checker& c) {
  for (int n = 1; n <= 6; ++n) {
    int dim = alg::commutant_dimension(n);
    c.require(dim == n + 1,
              "commutant dimension at level " + std::to_string(n) + " is " + std::to_string(dim));
  }
  if (c.ok) c.note << "orbital counts n+1 for n = 1..6";
}

void ac5(Checker& c) {
  c.require(alg::nucleus_rank_at_level(3) == 4, "rank at level 3 is not 4");
  c.require(alg::nucleus_rank_at_level(4) == 5, "rank at level 4 is not 5");

  AlgebraElement survivor = AlgebraElement::one();
  survivor.add_term(ge("b"), 1);
  survivor.add_term(ge("c"), -1);
  survivor.add_term(ge("d"), -1);
  c.require(alg::pi_level(survivor, 3).is_zero(), "1+b-c-d does not span the level-3 kernel");
  c.require(!alg::is_zero_in_B(survivor).in_kernel, "1+b-c-d reported in the kernel");

  AlgebraElement chain = alg::psi_iterate(survivor, 3).at(6, 6);
  AlgebraElement expected = AlgebraElement::one().scaled(2);
  expected.add_term(ge("a"), -2);
  c.require(chain == expected, "the residual-case chain does not pass through 2 - 2a");

  auto witness = alg::find_scalar_entry(survivor);
  c.require(witness.lambda == 2, "surviving scalar is not 2");
  c.require(witness.depth <= 5, "surviving scalar deeper than 5");
  if (c.ok) {
    c.note << "ranks 4/5; scalar 2 at depth " << witness.depth;
  }
}

void ac6(Checker& c, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0xac6);
  int tested = 0;
  while (tested < 50 && c.ok) {
    AlgebraElement x = random_element(rng, 5, 8);
    if (x.is_zero() || alg::is_zero_in_B(x).in_kernel) continue;
    ++tested;
    auto found = alg::find_scalar_entry(x);
    auto reference = scan_for_scalar(x, found.depth + 1);
    c.require(reference.has_value(), "scan found no scalar");
    if (!c.ok) break;
    c.require(found.depth == reference->depth, "depth differs from the scan minimum");
    AlgebraElement entry = alg::psi_iterate(x, found.depth).at(found.row, found.col);
    c.require(entry == AlgebraElement::one().scaled(found.lambda),
              "witness entry does not verify by expansion");
    auto proof = alg::scalar_entry_case_analysis(x);
    AlgebraElement pentry = alg::psi_iterate(x, proof.depth).at(proof.row, proof.col);
    c.require(pentry == AlgebraElement::one().scaled(proof.lambda),
              "case-analysis witness does not verify by expansion");
  }
  if (c.ok) c.note << "50 elements; witnesses verified; minimal depths match";
}

void ac7(Checker& c) {
  bratteli::BratteliDiagram d = bratteli::build_y_infty(10);

  auto q2 = bratteli::quotient(d, bratteli::ideal_from_open_set(d, {2}));
  auto lim2 = bratteli::limit_dimension(q2, q2.depth());
  c.require(lim2.kind == bratteli::LimitDimension::Kind::finite &&
                lim2.dims == std::vector<long long>{1},
            "quotient omitting column 2 is not the scalars");

  auto q13 = bratteli::quotient(d, bratteli::ideal_from_open_set(d, {1, 3}));
  auto lim13 = bratteli::limit_dimension(q13, q13.depth());
  c.require(lim13.kind == bratteli::LimitDimension::Kind::finite &&
                lim13.dims == std::vector<long long>{1, 2},
            "quotient omitting columns 1,3 is not 1 + M_2");

  bratteli::BratteliDiagram s = bratteli::build_strictly_rfd(8);
  auto q3 = bratteli::quotient(s, bratteli::strictly_rfd_column_ideal(s, 3));
  auto lim3 = bratteli::limit_dimension(q3, q3.depth());
  c.require(lim3.kind == bratteli::LimitDimension::Kind::finite &&
                lim3.dims == std::vector<long long>{4},
            "third primitive quotient of the two-halves diagram is not M_4");

  auto sizes = bratteli::primitive_quotient_sizes(d, 8);
  std::vector<long long> expect = {1, 1, 2, 4, 8, 16, 32, 64};
  c.require(sizes == expect, "primitive quotient sizes are off");
  if (c.ok) c.note << "limits (1), (1,2), (4); sizes 1,1,2,4,...,2^(j-2)";
}

void ac8(Checker& c) {
  bratteli::BratteliDiagram d3 = bratteli::build_y_infty(3);
  auto enumerated = bratteli::enumerate_ideals(d3, 3);
  std::set<std::vector<std::set<int>>> brute;
  for (const auto& u : enumerated) brute.insert(u.members);

  std::set<std::vector<std::set<int>>> formula;
  for (std::set<int> f : {std::set<int>{}, {1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}, {1, 2, 3}}) {
    auto u = bratteli::ideal_from_open_set(d3, f);
    c.require(bratteli::is_ideal(d3, u.members), "formula ideal fails the closure conditions");
    formula.insert(u.members);
  }

  for (const auto& u : formula) {
    c.require(brute.contains(u), "a formula ideal is missing from the enumeration");
  }
  std::size_t artifacts = 0;
  for (const auto& u : brute) {
    if (!formula.contains(u)) ++artifacts;
  }
  c.require(artifacts == 0, std::to_string(artifacts) + " truncation artifacts found");
  if (c.ok) {
    c.note << brute.size() << " enumerated = " << formula.size()
           << " formula ideals; 0 discrepancies";
  }
}

void ac9(Checker& c, std::uint64_t seed) {
  auto u = k0::rho_model(k0::order_unit());
  std::vector<k0::Integer> expect = {1, 1, 2, 4, 8, 16, 32, 64, 128, 256};
  c.require(u.expand(10) == expect, "order unit model is not (1,1,2,4,8,...)");

  std::mt19937_64 rng(seed ^ 0xac9);
  for (int i = 0; i < 200 && c.ok; ++i) {
    int level = next_int(rng, 1, 8);
    std::vector<k0::Integer> v;
    for (int j = 0; j < level; ++j) v.push_back(next_int(rng, -5, 5));
    k0::K0Element x(std::move(v));
    bool brute = false;
    for (int m = x.level(); m <= 12 && !brute; ++m) {
      brute = true;
      for (const k0::Integer& coord : k0::push(x, m)) {
        if (coord < 0) {
          brute = false;
          break;
        }
      }
    }
    c.require(k0::is_positive(x) == brute, "positivity disagrees with the pushforward oracle");
  }
  if (c.ok) c.note << "unit model exact; 200 elements agree with the oracle";
}

void ac10(Checker& c) {
  auto k = ge("ab").pow(2);
  auto i4 = grig::normal_closure_index(k, 4);
  auto i5 = grig::normal_closure_index(k, 5);
  c.require(i4 == 16, "index at level 4 is " + std::to_string(i4));
  c.require(i5 == 16, "index at level 5 is " + std::to_string(i5));
  if (c.ok) c.note << "normal closure of (ab)^2 has index 16 at levels 4 and 5";
}

void ac11(Checker& c, std::uint64_t seed) {
  AlgebraElement x = alg::rigid_kernel_element(ge("ada"), ge("d"));
  c.require(x.size() == 4, "the rigid kernel element does not have four terms");
  c.require(alg::is_zero_in_B(x).in_kernel, "rigid kernel element not in the kernel");

  std::mt19937_64 rng(seed ^ 0xac11);
  for (int i = 0; i < 20 && c.ok; ++i) {
    AlgebraElement g = AlgebraElement::word(random_word(rng, 6));
    AlgebraElement h = AlgebraElement::word(random_word(rng, 6));
    c.require(alg::is_zero_in_B(g * x * h).in_kernel, "g x h left the kernel");
  }
  if (c.ok) c.note << "(1-ada)(1-d) is a nonzero kernel element; 20 conjugations stay inside";
}

void ac12(Checker& c) {
  for (int n = 0; n <= 8 && c.ok; ++n) {
    space::FiniteT0Space yn = space::build_yn(n);
    c.require(space::family_is_lattice(yn.point_count(), yn.closed_sets()),
              "lattice check fails at n=" + std::to_string(n));
    c.require(space::family_is_t0(yn.point_count(), yn.closed_sets()),
              "T0 check fails at n=" + std::to_string(n));
    c.require(space::is_spectral(yn), "spectral check fails at n=" + std::to_string(n));
    c.require(space::classify_yn(yn) == n, "classification round-trip fails");
  }

  space::FiniteT0Space discrete = space::FiniteT0Space::create(
      {"p", "q", "r"}, {0b000, 0b001, 0b010, 0b100, 0b011, 0b101, 0b110, 0b111});
  c.require(!space::classify_yn(discrete).has_value(), "discrete space misclassified");

  bool rejected = false;
  try {
    space::FiniteT0Space::create({"p", "q", "r"}, {0b000, 0b001, 0b010, 0b100, 0b111});
  } catch (const std::exception&) {
    rejected = true;
  }
  c.require(rejected, "non-lattice family accepted");
  c.require(!space::family_is_spectral(3, {0b000, 0b001, 0b010, 0b100, 0b111}),
            "broken family passes the spectral check");
  if (c.ok) c.note << "n <= 8 verified; counterexamples rejected";
}

}  // namespace

std::vector<CriterionResult> run_battery(std::uint64_t seed) {
  std::vector<CriterionResult> results;
  results.push_back(run_one("AC1", "kernel element with certificate", ac1));
  results.push_back(run_one("AC2", "presentation relators and non-relators", ac2));
  results.push_back(
      run_one("AC3", "representation laws and recursion agreement",
              [seed](Checker& c) { ac3(c, seed); }));
  results.push_back(run_one("AC4", "irreducible decomposition via orbital counts", ac4));
  results.push_back(run_one("AC5", "nucleus independence and the surviving scalar", ac5));
  results.push_back(
      run_one("AC6", "scalar-entry search against the depth scan",
              [seed](Checker& c) { ac6(c, seed); }));
  results.push_back(run_one("AC7", "diagram quotients and primitive sizes", ac7));
  results.push_back(run_one("AC8", "ideal lattice formula against brute force", ac8));
  results.push_back(
      run_one("AC9", "dimension group model and positivity",
              [seed](Checker& c) { ac9(c, seed); }));
  results.push_back(run_one("AC10", "index-16 normal closure at levels 4 and 5", ac10));
  results.push_back(
      run_one("AC11", "rigid-stabilizer kernel element",
              [seed](Checker& c) { ac11(c, seed); }));
  results.push_back(run_one("AC12", "model spaces and their recognition", ac12));
  return results;
}

}  // namespace justinf::acceptance
