#include "justinf/grig.hpp"

#include <algorithm>
#include <array>
#include <cstring>
#include <deque>
#include <list>
#include <mutex>
#include <unordered_map>
#include <unordered_set>

#include "justinf/errors.hpp"

namespace justinf::grig {

namespace {

bool is_klein(char c) { return c == 'b' || c == 'c' || c == 'd'; }

// Bounded memo for the word problem: plain LRU (list + map) behind a mutex,
// shared by all threads.
class TrivialCache {
 public:
  void set_capacity(std::size_t cap) {
    std::lock_guard<std::mutex> lock(mu_);
    cap_ = cap;
    shrink();
  }

  void clear() {
    std::lock_guard<std::mutex> lock(mu_);
    order_.clear();
    map_.clear();
  }

  std::optional<bool> get(const std::string& key) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = map_.find(key);
    if (it == map_.end()) return std::nullopt;
    order_.splice(order_.begin(), order_, it->second.second);
    return it->second.first;
  }

  void put(const std::string& key, bool value) {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = map_.find(key);
    if (it != map_.end()) {
      it->second.first = value;
      order_.splice(order_.begin(), order_, it->second.second);
      return;
    }
    order_.push_front(key);
    map_.emplace(key, std::make_pair(value, order_.begin()));
    shrink();
  }

 private:
  void shrink() {
    while (map_.size() > cap_) {
      map_.erase(order_.back());
      order_.pop_back();
    }
  }

  std::mutex mu_;
  std::size_t cap_ = default_caps().trivial_cache_cap;
  std::list<std::string> order_;
  std::unordered_map<std::string, std::pair<bool, std::list<std::string>::iterator>> map_;
};

TrivialCache& trivial_cache() {
  static TrivialCache cache;
  return cache;
}

void append_reduced(std::string& out, char c) {
  out.push_back(c);
  while (out.size() >= 2) {
    char x = out[out.size() - 2];
    char y = out[out.size() - 1];
    if (x == y) {
      out.erase(out.size() - 2);
      continue;
    }
    if (is_klein(x) && is_klein(y)) {
      out.erase(out.size() - 2);
      out.push_back(klein_product(x, y));
      continue;
    }
    break;
  }
}

std::string reduce_letters(std::string_view letters) {
  std::string out;
  out.reserve(letters.size());
  for (char c : letters) {
    if (!is_generator_letter(c)) {
      throw ParseError(std::string("not a generator letter: '") + c + "'");
    }
    append_reduced(out, c);
  }
  return out;
}

const WreathImage& generator_wreath(char c) {
  static const WreathImage wa{GroupElement(), GroupElement(), true};
  static const WreathImage wb{GroupElement::from_normal("a"), GroupElement::from_normal("c"), false};
  static const WreathImage wc{GroupElement::from_normal("a"), GroupElement::from_normal("d"), false};
  static const WreathImage wd{GroupElement(), GroupElement::from_normal("b"), false};
  switch (c) {
    case 'a': return wa;
    case 'b': return wb;
    case 'c': return wc;
    default: return wd;
  }
}

// Fixed-width permutation key for hash-set closures (degree <= 32 at the
// level cap).
struct PermKey {
  std::array<std::uint8_t, 32> v{};
  bool operator==(const PermKey&) const = default;
};

struct PermKeyHash {
  std::size_t operator()(const PermKey& k) const {
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint8_t b : k.v) {
      h ^= b;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

PermKey key_of(const std::vector<std::uint32_t>& p) {
  PermKey k;
  for (std::size_t i = 0; i < p.size(); ++i) k.v[i] = static_cast<std::uint8_t>(p[i]);
  return k;
}

std::vector<std::uint32_t> compose_maps(const std::vector<std::uint32_t>& f,
                                        const std::vector<std::uint32_t>& g) {
  // (f then-after g applied first): result[v] = f[g[v]]
  std::vector<std::uint32_t> r(f.size());
  for (std::size_t v = 0; v < g.size(); ++v) r[v] = f[g[v]];
  return r;
}

std::vector<std::uint32_t> invert_map(const std::vector<std::uint32_t>& f) {
  std::vector<std::uint32_t> r(f.size());
  for (std::size_t v = 0; v < f.size(); ++v) r[f[v]] = static_cast<std::uint32_t>(v);
  return r;
}

std::vector<std::vector<std::uint32_t>> generator_perms(int level) {
  std::vector<std::vector<std::uint32_t>> gens;
  for (char c : {'a', 'b', 'c', 'd'}) {
    gens.push_back(level_permutation(GroupElement::from_normal(std::string(1, c)), level).map);
  }
  return gens;
}

void check_group_level(int level, const Caps& caps) {
  if (level < 1) throw DomainError("level must be >= 1");
  if (level > caps.group_level_cap) {
    throw ResourceError("level " + std::to_string(level) + " exceeds group level cap " +
                        std::to_string(caps.group_level_cap));
  }
}

}  // namespace

bool is_generator_letter(char c) { return c == 'a' || c == 'b' || c == 'c' || c == 'd'; }

char klein_product(char x, char y) {
  // distinct letters of {b,c,d}: the product is the third one
  return static_cast<char>('b' + 'c' + 'd' - x - y);
}

GroupElement GroupElement::parse(std::string_view letters) {
  GroupElement g;
  g.word_ = reduce_letters(letters);
  return g;
}

GroupElement GroupElement::from_normal(std::string w) {
  GroupElement g;
  g.word_ = std::move(w);
  return g;
}

GroupElement GroupElement::operator*(const GroupElement& rhs) const {
  std::string out = word_;
  for (char c : rhs.word_) append_reduced(out, c);
  return from_normal(std::move(out));
}

GroupElement GroupElement::inverse() const {
  std::string w(word_.rbegin(), word_.rend());
  return from_normal(std::move(w));
}

GroupElement GroupElement::pow(unsigned e) const {
  GroupElement acc;
  GroupElement base = *this;
  while (e) {
    if (e & 1u) acc = acc * base;
    base = base * base;
    e >>= 1u;
  }
  return acc;
}

WreathImage WreathImage::operator*(const WreathImage& rhs) const {
  // Sections of a product: (gh)|_j = g|_{h(j)} * h|_j, root activity xor.
  if (!rhs.active) {
    return WreathImage{first * rhs.first, second * rhs.second, active != rhs.active};
  }
  return WreathImage{second * rhs.first, first * rhs.second, active != rhs.active};
}

LevelPermutation LevelPermutation::identity(int level) {
  LevelPermutation p;
  p.level = level;
  p.map.resize(std::size_t{1} << level);
  for (std::size_t v = 0; v < p.map.size(); ++v) p.map[v] = static_cast<std::uint32_t>(v);
  return p;
}

bool LevelPermutation::is_identity() const {
  for (std::size_t v = 0; v < map.size(); ++v) {
    if (map[v] != v) return false;
  }
  return true;
}

LevelPermutation LevelPermutation::compose(const LevelPermutation& rhs) const {
  if (level != rhs.level) throw DomainError("level mismatch in permutation composition");
  LevelPermutation p;
  p.level = level;
  p.map = compose_maps(map, rhs.map);
  return p;
}

LevelPermutation LevelPermutation::inverse() const {
  LevelPermutation p;
  p.level = level;
  p.map = invert_map(map);
  return p;
}

GroupElement normalize(std::string_view letters) { return GroupElement::parse(letters); }

WreathImage wreath(const GroupElement& g) {
  WreathImage acc;  // identity
  for (char c : g.word()) acc = acc * generator_wreath(c);
  return acc;
}

GroupElement section(const GroupElement& g, std::string_view vertex) {
  GroupElement cur = g;
  for (char bit : vertex) {
    if (bit != '0' && bit != '1') throw ParseError("vertex addresses are binary strings");
    WreathImage w = wreath(cur);
    cur = (bit == '0') ? w.first : w.second;
  }
  return cur;
}

bool is_trivial(const GroupElement& g) {
  if (g.length() <= 1) return g.is_identity_word();
  if (auto hit = trivial_cache().get(g.word())) return *hit;
  WreathImage w = wreath(g);
  bool ans = false;
  if (!w.active) ans = is_trivial(w.first) && is_trivial(w.second);
  trivial_cache().put(g.word(), ans);
  return ans;
}

bool equal(const GroupElement& g, const GroupElement& h) {
  if (g == h) return true;
  return is_trivial(g * h.inverse());
}

std::optional<std::uint64_t> order(const GroupElement& g, int max_exponent) {
  if (max_exponent < 1 || max_exponent > 62) {
    throw DomainError("max_exponent must be in [1, 62]");
  }
  GroupElement p = g;
  for (int k = 0; k <= max_exponent; ++k) {
    if (is_trivial(p)) return std::uint64_t{1} << k;
    if (p.length() > (std::size_t{1} << 22)) {
      throw ResourceError("power words exceed the length guard before exponent " +
                          std::to_string(max_exponent));
    }
    p = p * p;
  }
  return std::nullopt;
}

LevelPermutation level_permutation(const GroupElement& g, int level) {
  if (level < 0) throw DomainError("level must be >= 0");
  if (level > 22) throw ResourceError("level permutation beyond level 22 not materialized");
  if (level == 0) return LevelPermutation::identity(0);
  WreathImage w = wreath(g);
  LevelPermutation p0 = level_permutation(w.first, level - 1);
  LevelPermutation p1 = level_permutation(w.second, level - 1);
  LevelPermutation out;
  out.level = level;
  out.map.resize(std::size_t{1} << level);
  const std::uint32_t half = std::uint32_t{1} << (level - 1);
  for (std::uint32_t v = 0; v < half; ++v) {
    // g(j w) = root(j) . (g|_j)(w); the first tree level is the high bit.
    if (!w.active) {
      out.map[v] = p0.map[v];
      out.map[half + v] = half + p1.map[v];
    } else {
      out.map[v] = half + p0.map[v];
      out.map[half + v] = p1.map[v];
    }
  }
  return out;
}

GroupElement lift_first(const GroupElement& f) {
  std::string out;
  for (char c : f.word()) {
    switch (c) {
      case 'a': out += "b"; break;
      case 'b': out += "ada"; break;
      case 'c': out += "aba"; break;
      default: out += "aca"; break;
    }
  }
  GroupElement g = GroupElement::parse(out);
  WreathImage w = wreath(g);
  if (w.active || !equal(w.first, f)) throw DomainError("lift_first postcondition failed");
  return g;
}

GroupElement lift_second(const GroupElement& f) {
  GroupElement a = GroupElement::from_normal("a");
  GroupElement g = a * lift_first(f) * a;
  WreathImage w = wreath(g);
  if (w.active || !equal(w.second, f)) throw DomainError("lift_second postcondition failed");
  return g;
}

std::string sigma_letters(std::string_view letters) {
  std::string out;
  out.reserve(letters.size() * 3);
  for (char c : letters) {
    switch (c) {
      case 'a': out += "aca"; break;
      case 'b': out += "d"; break;
      case 'c': out += "b"; break;
      case 'd': out += "c"; break;
      default: throw ParseError(std::string("not a generator letter: '") + c + "'");
    }
  }
  return out;
}

GroupElement sigma(const GroupElement& g, int times) {
  if (times < 0) throw DomainError("sigma power must be >= 0");
  std::string w = g.word();
  for (int i = 0; i < times; ++i) w = sigma_letters(w);
  return GroupElement::parse(w);
}

GroupElement lysenok_relator(int family, int k) {
  if (family != 0 && family != 1) throw DomainError("relator family is 0 or 1");
  if (k < 0) throw DomainError("relator index must be >= 0");
  std::string base = (family == 0) ? "ad" : "adacac";
  for (int i = 0; i < k; ++i) base = sigma_letters(base);
  std::string word;
  for (int i = 0; i < 4; ++i) word += base;
  return GroupElement::parse(word);
}

const std::vector<GroupElement>& nucleus() {
  static const std::vector<GroupElement> n = {
      GroupElement(), GroupElement::from_normal("a"), GroupElement::from_normal("b"),
      GroupElement::from_normal("c"), GroupElement::from_normal("d")};
  return n;
}

namespace {

std::vector<std::uint32_t> unkey(const PermKey& k, std::size_t degree) {
  std::vector<std::uint32_t> p(degree);
  for (std::size_t i = 0; i < degree; ++i) p[i] = k.v[i];
  return p;
}

// BFS closure of the subgroup generated by `gens` (right multiplication);
// returns the element set in discovery order.
struct SubgroupClosure {
  std::vector<PermKey> elems;
  std::unordered_set<PermKey, PermKeyHash> seen;
};

SubgroupClosure close_subgroup(const std::vector<std::vector<std::uint32_t>>& gens,
                               std::size_t degree) {
  SubgroupClosure c;
  std::vector<std::uint32_t> identity(degree);
  for (std::size_t i = 0; i < degree; ++i) identity[i] = static_cast<std::uint32_t>(i);
  PermKey id = key_of(identity);
  c.elems.push_back(id);
  c.seen.insert(id);
  for (std::size_t head = 0; head < c.elems.size(); ++head) {
    auto cur = unkey(c.elems[head], degree);
    for (const auto& s : gens) {
      PermKey nxt = key_of(compose_maps(cur, s));
      if (c.seen.insert(nxt).second) c.elems.push_back(nxt);
    }
  }
  return c;
}

}  // namespace

std::uint64_t level_quotient_order(int level, const Caps& caps) {
  check_group_level(level, caps);
  auto gens = generator_perms(level);
  return close_subgroup(gens, std::size_t{1} << level).elems.size();
}

std::uint64_t normal_closure_index(const GroupElement& g, int level, const Caps& caps) {
  check_group_level(level, caps);
  const std::size_t degree = std::size_t{1} << level;
  auto gens = generator_perms(level);
  auto gp = level_permutation(g, level).map;

  // Conjugation orbit of gp under the group generators (all involutions),
  // i.e. the full conjugacy class of the image of g.
  std::vector<PermKey> orbit{key_of(gp)};
  std::unordered_set<PermKey, PermKeyHash> orbit_seen{orbit[0]};
  for (std::size_t head = 0; head < orbit.size(); ++head) {
    auto cur = unkey(orbit[head], degree);
    for (const auto& s : gens) {
      PermKey conj = key_of(compose_maps(s, compose_maps(cur, s)));
      if (orbit_seen.insert(conj).second) orbit.push_back(conj);
    }
  }

  // N = subgroup generated by the class. Each adopted generator at least
  // doubles the subgroup, so at most log2|N| re-closures happen.
  std::vector<std::vector<std::uint32_t>> closure_gens;
  SubgroupClosure closure = close_subgroup(closure_gens, degree);
  for (const auto& c : orbit) {
    if (!closure.seen.contains(c)) {
      closure_gens.push_back(unkey(c, degree));
      closure = close_subgroup(closure_gens, degree);
    }
  }

  if (closure.elems.size() == 1) return level_quotient_order(level, caps);

  // Right-coset BFS; cosets N x = N y iff x y^{-1} in N.
  std::vector<std::vector<std::uint32_t>> reps;
  std::vector<std::uint32_t> identity(degree);
  for (std::size_t i = 0; i < degree; ++i) identity[i] = static_cast<std::uint32_t>(i);
  reps.push_back(identity);
  for (std::size_t head = 0; head < reps.size(); ++head) {
    for (const auto& s : gens) {
      auto cand = compose_maps(reps[head], s);
      bool fresh = true;
      for (const auto& r : reps) {
        if (closure.seen.contains(key_of(compose_maps(cand, invert_map(r))))) {
          fresh = false;
          break;
        }
      }
      if (fresh) reps.push_back(std::move(cand));
    }
  }
  return reps.size();
}

std::vector<GroupElement> reduced_words_up_to(int max_length) {
  std::vector<GroupElement> out{GroupElement()};
  std::vector<std::string> frontier{""};
  for (int len = 1; len <= max_length; ++len) {
    std::vector<std::string> next;
    for (const auto& w : frontier) {
      for (char c : {'a', 'b', 'c', 'd'}) {
        if (w.empty()) {
          next.emplace_back(1, c);
          continue;
        }
        char last = w.back();
        if (last == c || (is_klein(last) && is_klein(c))) continue;
        next.push_back(w + c);
      }
    }
    for (const auto& w : next) out.push_back(GroupElement::from_normal(w));
    frontier = std::move(next);
  }
  return out;
}

std::optional<GroupElement> search_section_preimage(const GroupElement& target, int max_length) {
  if (max_length < 0 || max_length > 12) throw DomainError("search length must be in [0, 12]");
  for (const auto& w : reduced_words_up_to(max_length)) {
    WreathImage im = wreath(w);
    if (!im.active && is_trivial(im.second) && equal(im.first, target)) return w;
  }
  return std::nullopt;
}

void set_trivial_cache_capacity(std::size_t entries) { trivial_cache().set_capacity(entries); }

void clear_trivial_cache() { trivial_cache().clear(); }

}  // namespace justinf::grig
