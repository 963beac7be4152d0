#pragma once

// The algebra B generated by the tree representation of the Grigorchuk
// group: exact rational group-algebra arithmetic, the 2x2 matrix recursion
// psi, nucleus reduction, a decision procedure for the representation
// kernel, the scalar-entry search, dense finite-level matrices, and
// commutant / independence probes.
//
// Elements are stored preimage-side as formal rational combinations of
// normal-form words; equality in B is decided by is_zero_in_B.

#include <gmpxx.h>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "justinf/caps.hpp"
#include "justinf/grig.hpp"

namespace justinf::alg {

using Rational = mpq_class;

class AlgebraElement {
 public:
  using Terms = std::map<grig::GroupElement, Rational>;

  AlgebraElement() = default;

  static AlgebraElement zero() { return AlgebraElement(); }
  static AlgebraElement one() { return word(grig::GroupElement::identity()); }
  static AlgebraElement word(const grig::GroupElement& g, const Rational& coeff = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  Rational coeff(const grig::GroupElement& g) const;

  // True when every word has length <= 1, i.e. the element lies in the
  // linear span of the nucleus {1, a, b, c, d}.
  bool in_nucleus_span() const;

  // The element written as lambda * 1 (single identity term or zero).
  std::optional<Rational> as_scalar() const;

  void add_term(const grig::GroupElement& g, const Rational& coeff);

  AlgebraElement operator+(const AlgebraElement& rhs) const;
  AlgebraElement operator-(const AlgebraElement& rhs) const;
  AlgebraElement operator-() const;
  AlgebraElement operator*(const AlgebraElement& rhs) const;
  AlgebraElement scaled(const Rational& s) const;

  bool operator==(const AlgebraElement&) const = default;

 private:
  Terms terms_;  // invariant: no zero coefficients
};

AlgebraElement star(const AlgebraElement& x);

// Sparse 2^depth x 2^depth matrix over the algebra; absent entries are zero.
struct BlockMatrix {
  int depth = 0;
  std::map<std::pair<long, long>, AlgebraElement> entries;

  long size() const { return 1L << depth; }
  static BlockMatrix scalar(const AlgebraElement& x);
  const AlgebraElement* find(long row, long col) const;
  AlgebraElement at(long row, long col) const;
  void add(long row, long col, const AlgebraElement& x);
  bool is_zero() const { return entries.empty(); }
  bool all_nucleus_span() const;

  BlockMatrix operator*(const BlockMatrix& rhs) const;
  bool operator==(const BlockMatrix&) const = default;
};

// One application of the matrix recursion to every entry; the new index bit
// is the least significant one, matching lexicographic vertex order.
BlockMatrix expand_once(const BlockMatrix& m);

BlockMatrix psi_expand(const AlgebraElement& x);
BlockMatrix psi_iterate(const AlgebraElement& x, int depth, const Caps& caps = default_caps());

struct NucleusReduction {
  int depth = 0;
  BlockMatrix matrix;
};

// Least depth with every entry in the nucleus span; exists by contraction.
NucleusReduction reduce_to_nucleus(const AlgebraElement& x, const Caps& caps = default_caps());

struct KernelCertificate {
  bool in_kernel = false;
  int depth = 0;  // nucleus reduction depth
  // witness entry when not in the kernel
  long row = -1;
  long col = -1;
  AlgebraElement entry;
};

// Decides whether x represents zero in B. Sound by the linear independence
// of the five nucleus images, certified by nucleus_rank_at_level(4) == 5.
KernelCertificate is_zero_in_B(const AlgebraElement& x, const Caps& caps = default_caps());

struct ScalarWitness {
  int depth = 0;
  long row = 0;
  long col = 0;
  Rational lambda;
  bool operator==(const ScalarWitness&) const = default;
};

// Proof-driven witness: nucleus reduction followed by the three-case
// analysis on a nonzero nucleus-span entry. Termination in at most five
// further expansions.
ScalarWitness scalar_entry_case_analysis(const AlgebraElement& x,
                                         const Caps& caps = default_caps());

// Minimal-depth scalar entry: a depth scan bounded by the case-analysis
// depth. Requires x nonzero in B.
ScalarWitness find_scalar_entry(const AlgebraElement& x, const Caps& caps = default_caps());

// Dense exact matrix of the level-n representation.
struct LevelMatrix {
  int level = 0;
  std::vector<Rational> data;  // row-major, 2^level x 2^level

  long size() const { return 1L << level; }
  static LevelMatrix zeros(int level);
  static LevelMatrix identity(int level);
  Rational& at(long row, long col) { return data[static_cast<std::size_t>(row * size() + col)]; }
  const Rational& at(long row, long col) const {
    return data[static_cast<std::size_t>(row * size() + col)];
  }
  bool is_zero() const;
  LevelMatrix operator*(const LevelMatrix& rhs) const;
  LevelMatrix transpose() const;
  bool operator==(const LevelMatrix&) const = default;
};

LevelMatrix pi_level(const AlgebraElement& x, int level, const Caps& caps = default_caps());

// Number of orbits of the level-n action on ordered vertex pairs; equals
// the commutant dimension of the level-n representation.
int commutant_dimension(int level, const Caps& caps = default_caps());

// Rank over Q of the five level-n images of {1, a, b, c, d}.
int nucleus_rank_at_level(int level, const Caps& caps = default_caps());

// (1 - g1)(1 - g2) for g1 acting only inside the subtree at vertex 0 and g2
// only inside the subtree at vertex 1; rejects violations by name.
AlgebraElement rigid_kernel_element(const grig::GroupElement& g1, const grig::GroupElement& g2);

// k - 1, the generator of the augmentation-style ideal for k.
AlgebraElement delta_generator(const grig::GroupElement& k);

std::string rational_to_string(const Rational& q);
Rational rational_from_string(const std::string& s);

}  // namespace justinf::alg
