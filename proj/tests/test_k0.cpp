#include "justinf/k0.hpp"

#include <random>
#include <vector>

#include "doctest.h"
#include "justinf/bratteli.hpp"
#include "justinf/errors.hpp"

using namespace justinf;
using k0::Integer;
using k0::K0Element;

namespace {

K0Element el(std::vector<long> v) {
  std::vector<Integer> w(v.begin(), v.end());
  return K0Element(std::move(w));
}

std::vector<Integer> ints(std::vector<long> v) { return {v.begin(), v.end()}; }

int next_int(std::mt19937_64& rng, int lo, int hi) {
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

K0Element random_element(std::mt19937_64& rng, int max_level) {
  int level = next_int(rng, 1, max_level);
  std::vector<Integer> v;
  for (int i = 0; i < level; ++i) v.push_back(next_int(rng, -5, 5));
  return K0Element(std::move(v));
}

// Reference for positivity: some pushforward within the horizon is
// coordinatewise nonnegative.
bool brute_force_positive(const K0Element& x, int horizon) {
  for (int m = x.level(); m <= horizon; ++m) {
    bool ok = true;
    for (const Integer& c : k0::push(x, m)) {
      if (c < 0) {
        ok = false;
        break;
      }
    }
    if (ok) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("pushforwards along the connecting maps") {
  CHECK(k0::push(k0::order_unit(), 5) == ints({1, 1, 2, 4, 8}));
  CHECK(k0::push(el({1, -1}), 4) == ints({1, -1, 0, 0}));

  SUBCASE("push to the own level is the identity") {
    K0Element x = el({2, -1, 1});
    CHECK(k0::push(x, x.level()) == x.vector());
  }

  SUBCASE("functorial") {
    std::mt19937_64 rng(71);
    for (int i = 0; i < 50; ++i) {
      K0Element x = random_element(rng, 6);
      CHECK(k0::push(K0Element(k0::push(x, 8)), 11) == k0::push(x, 11));
    }
  }

  CHECK_THROWS_AS(k0::push(el({1, 0, 2}), 2), DomainError);
}

TEST_CASE("model sequences") {
  auto u = k0::rho_model(k0::order_unit());
  CHECK(u.prefix == ints({1}));
  CHECK(u.recurrent_from == 1);
  CHECK(u.expand(8) == ints({1, 1, 2, 4, 8, 16, 32, 64}));

  CHECK(k0::rho_model(el({0})).expand(5) == ints({0, 0, 0, 0, 0}));
  CHECK(k0::rho_model(el({0, 1, 0})).expand(6) == ints({0, 1, 0, 1, 2, 4}));

  SUBCASE("equal elements share the model") {
    CHECK(k0::rho_model(el({1, 1, 2, 4})) == k0::rho_model(k0::order_unit()));
  }
}

TEST_CASE("canonical form strips the recurrence tail") {
  CHECK(el({1, 1}).level() == 1);
  CHECK(el({1, 1, 2, 4}).vector() == ints({1}));
  CHECK(el({1, 0}).level() == 2);
  CHECK(el({-1, -1, -2}).vector() == ints({-1}));
  CHECK(el({0, 0, 0}).vector() == ints({0}));
}

TEST_CASE("positivity in the limit order") {
  CHECK(k0::is_positive(k0::order_unit()));
  CHECK(!k0::is_positive(el({1, -1})));
  CHECK(!k0::is_positive(el({2, -1, 1})));
  CHECK(k0::is_positive(el({0})));

  SUBCASE("agrees with the brute-force pushforward search") {
    std::mt19937_64 rng(72);
    for (int i = 0; i < 300; ++i) {
      K0Element x = random_element(rng, 8);
      CHECK(k0::is_positive(x) == brute_force_positive(x, 12));
    }
  }

  SUBCASE("only zero is positive both ways") {
    std::mt19937_64 rng(73);
    for (int i = 0; i < 100; ++i) {
      K0Element x = random_element(rng, 6);
      bool both = k0::is_positive(x) && k0::is_positive(k0::negate(x));
      CHECK(both == (x == el({0})));
    }
  }
}

TEST_CASE("equality via the injective model") {
  CHECK(k0::equal(el({1}), el({1, 1})));
  CHECK(!k0::equal(el({1, 0}), el({0, 1})));
  K0Element x = el({3, -2, 5});
  CHECK(k0::equal(x, K0Element(k0::push(x, 9))));
}

TEST_CASE("group laws") {
  std::mt19937_64 rng(74);
  for (int i = 0; i < 60; ++i) {
    K0Element x = random_element(rng, 6);
    K0Element y = random_element(rng, 6);
    K0Element z = random_element(rng, 6);
    CHECK(k0::add(x, y) == k0::add(y, x));
    CHECK(k0::add(k0::add(x, y), z) == k0::add(x, k0::add(y, z)));
    CHECK(k0::add(x, k0::negate(x)) == el({0}));
  }
}

TEST_CASE("order unit matches the canonical diagram dimensions") {
  auto d = bratteli::build_y_infty(8);
  for (int n = 1; n <= 8; ++n) {
    std::vector<Integer> expect;
    for (long long k : d.dims[static_cast<std::size_t>(n - 1)]) {
      expect.push_back(Integer(static_cast<long>(k)));
    }
    CHECK(k0::push(k0::order_unit(), n) == expect);
  }
}

TEST_CASE("finite coordinate projections are surjective (spot check)") {
  // explicit preimages for projections onto up to three coordinates
  std::vector<std::vector<int>> index_sets = {{1}, {3}, {1, 2}, {2, 5}, {1, 3, 6}, {2, 4, 5}};
  for (const auto& f : index_sets) {
    for (long t0 : {-2L, 0L, 3L}) {
      for (long t1 : {-1L, 2L}) {
        std::vector<long> targets;
        for (std::size_t i = 0; i < f.size(); ++i) {
          targets.push_back(i == 0 ? t0 : (i == 1 ? t1 : t0 - t1));
        }
        int max_index = f.back();
        std::vector<Integer> v(static_cast<std::size_t>(max_index), 0);
        for (std::size_t i = 0; i < f.size(); ++i) {
          v[static_cast<std::size_t>(f[i] - 1)] = targets[i];
        }
        auto model = k0::rho_model(K0Element(v)).expand(max_index);
        for (std::size_t i = 0; i < f.size(); ++i) {
          CHECK(model[static_cast<std::size_t>(f[i] - 1)] == Integer(targets[i]));
        }
      }
    }
  }
}
