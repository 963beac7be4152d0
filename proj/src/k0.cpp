#include "justinf/k0.hpp"

#include "justinf/errors.hpp"

namespace justinf::k0 {

namespace {

Integer partial_sum(const std::vector<Integer>& v, std::size_t count) {
  Integer s = 0;
  for (std::size_t i = 0; i < count; ++i) s += v[i];
  return s;
}

}  // namespace

K0Element::K0Element(std::vector<Integer> vector) : vector_(std::move(vector)) {
  if (vector_.empty()) throw DomainError("K0 vectors have level >= 1");
  while (vector_.size() > 1 && vector_.back() == partial_sum(vector_, vector_.size() - 1)) {
    vector_.pop_back();
  }
}

std::vector<Integer> ModelSequence::expand(int n) const {
  if (n < 0) throw DomainError("cannot expand to negative length");
  std::vector<Integer> out;
  Integer running = 0;
  for (int j = 0; j < n; ++j) {
    if (j < static_cast<int>(prefix.size())) {
      out.push_back(prefix[static_cast<std::size_t>(j)]);
    } else {
      out.push_back(running);
    }
    running += out.back();
  }
  return out;
}

K0Element order_unit() { return K0Element({Integer(1)}); }

std::vector<Integer> push(const K0Element& x, int m) {
  if (m < x.level()) throw DomainError("cannot push below the canonical level");
  std::vector<Integer> v = x.vector();
  Integer running = partial_sum(v, v.size());
  while (static_cast<int>(v.size()) < m) {
    v.push_back(running);
    running += v.back();
  }
  return v;
}

ModelSequence rho_model(const K0Element& x) {
  ModelSequence s;
  s.prefix = x.vector();
  s.recurrent_from = x.level();
  return s;
}

bool is_positive(const K0Element& x) {
  // appended coordinates are partial sums of the prefix, so the prefix
  // signs decide the whole model sequence
  for (const Integer& c : x.vector()) {
    if (c < 0) return false;
  }
  return true;
}

bool equal(const K0Element& x, const K0Element& y) { return x == y; }

K0Element add(const K0Element& x, const K0Element& y) {
  int m = std::max(x.level(), y.level());
  std::vector<Integer> a = push(x, m);
  std::vector<Integer> b = push(y, m);
  for (int i = 0; i < m; ++i) a[static_cast<std::size_t>(i)] += b[static_cast<std::size_t>(i)];
  return K0Element(std::move(a));
}

K0Element negate(const K0Element& x) {
  std::vector<Integer> v = x.vector();
  for (Integer& c : v) c = -c;
  return K0Element(std::move(v));
}

}  // namespace justinf::k0
