#pragma once

// The ordered K0 group of the canonical just-infinite AF-algebra: the
// inductive limit of Z^n under (x_1,...,x_n) -> (x_1,...,x_n, x_1+...+x_n),
// with its explicit model inside the product of countably many copies of Z
// (sequences that eventually satisfy x_{j+1} = x_1 + ... + x_j).
//
// Every element is normalized to its least-level representative, which
// makes equality a syntactic check and positivity a sign scan.

#include <gmpxx.h>

#include <vector>

namespace justinf::k0 {

using Integer = mpz_class;

class K0Element {
 public:
  // Normalizes by stripping trailing coordinates that satisfy the
  // recurrence. Level >= 1.
  explicit K0Element(std::vector<Integer> vector);
  K0Element() : K0Element(std::vector<Integer>{0}) {}

  int level() const { return static_cast<int>(vector_.size()); }
  const std::vector<Integer>& vector() const { return vector_; }

  bool operator==(const K0Element&) const = default;

 private:
  std::vector<Integer> vector_;
};

struct ModelSequence {
  std::vector<Integer> prefix;  // the canonical representative
  int recurrent_from = 1;       // the recurrence holds from this index on

  // First n terms of the sequence.
  std::vector<Integer> expand(int n) const;
  bool operator==(const ModelSequence&) const = default;
};

K0Element order_unit();  // class of 1 at level 1; model (1,1,2,4,8,...)

// The level-m representative (m >= canonical level of x).
std::vector<Integer> push(const K0Element& x, int m);

ModelSequence rho_model(const K0Element& x);

// Positivity in the limit order: every model coordinate is >= 0, which the
// canonical prefix already decides.
bool is_positive(const K0Element& x);

bool equal(const K0Element& x, const K0Element& y);

K0Element add(const K0Element& x, const K0Element& y);
K0Element negate(const K0Element& x);

}  // namespace justinf::k0
