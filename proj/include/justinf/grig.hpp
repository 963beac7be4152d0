#pragma once

// Exact engine for the first Grigorchuk group G = <a,b,c,d>.
//
// Group elements are kept in free-product normal form: words over {a,b,c,d}
// with no two adjacent letters from the Klein part {b,c,d} and no repeated
// letter, i.e. the letters alternate between 'a' and a single Klein letter.
// This form is unique in Z/2 * (Z/2 x Z/2); equality in G itself is decided
// by the contraction-based word problem (is_trivial / equal).
//
// The wreath recursion records the two first-level sections and the root
// activity; words act on the binary rooted tree and compose right to left,
// so wreath(g * h) = wreath(g) * wreath(h) for the semidirect-product law
// implemented by WreathImage::operator*.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "justinf/caps.hpp"

namespace justinf::grig {

bool is_generator_letter(char c);

// Product of two distinct letters of {b,c,d} (bc = d, bd = c, cd = b).
char klein_product(char x, char y);

class GroupElement {
 public:
  GroupElement() = default;

  // Reduces an arbitrary letter sequence with the local rules xx -> 1 and
  // Klein multiplication. Total; throws ParseError on foreign letters.
  static GroupElement parse(std::string_view letters);

  // Wraps a string that is already in normal form (internal fast path).
  static GroupElement from_normal(std::string w);

  static GroupElement identity() { return GroupElement(); }

  const std::string& word() const { return word_; }
  std::size_t length() const { return word_.size(); }
  bool is_identity_word() const { return word_.empty(); }

  GroupElement operator*(const GroupElement& rhs) const;
  // Every generator is an involution, so inversion is word reversal.
  GroupElement inverse() const;
  GroupElement pow(unsigned e) const;

  // Syntactic (normal-form) comparison; group equality is grig::equal.
  auto operator<=>(const GroupElement&) const = default;

 private:
  std::string word_;
};

struct WreathImage {
  GroupElement first;   // section at vertex 0
  GroupElement second;  // section at vertex 1
  bool active = false;  // true: the root swap
  WreathImage operator*(const WreathImage& rhs) const;
  bool operator==(const WreathImage&) const = default;
};

struct LevelPermutation {
  int level = 0;
  std::vector<std::uint32_t> map;  // map[v] = image of v, vertices in lexicographic order

  static LevelPermutation identity(int level);
  std::size_t degree() const { return map.size(); }
  bool is_identity() const;
  LevelPermutation compose(const LevelPermutation& rhs) const;  // apply rhs first
  LevelPermutation inverse() const;
  bool operator==(const LevelPermutation&) const = default;
};

GroupElement normalize(std::string_view letters);

WreathImage wreath(const GroupElement& g);

// Section g|_v for a binary vertex address (empty address: g itself).
GroupElement section(const GroupElement& g, std::string_view vertex);

// Contraction-based word problem; memoized by normal form.
bool is_trivial(const GroupElement& g);
bool equal(const GroupElement& g, const GroupElement& h);

// Least 2^k with g^(2^k) = 1, by repeated squaring; nullopt ("overflow")
// when k would exceed max_exponent. The group is 2-torsion, so this is the
// order of g whenever it returns.
std::optional<std::uint64_t> order(const GroupElement& g, int max_exponent);

LevelPermutation level_permutation(const GroupElement& g, int level);

// Preimage of f under the first-coordinate projection of St(1): a word g
// with wreath(g) = (f, *, inactive), via the substitution a->b, b->ada,
// c->aba, d->aca. lift_second conjugates by a.
GroupElement lift_first(const GroupElement& f);
GroupElement lift_second(const GroupElement& f);

// Lysenok substitution a -> aca, b -> d, c -> b, d -> c on raw letters,
// followed by normalization.
std::string sigma_letters(std::string_view letters);
GroupElement sigma(const GroupElement& g, int times = 1);

// sigma^k applied to (ad)^4 (family 0) or (adacac)^4 (family 1).
GroupElement lysenok_relator(int family, int k);

const std::vector<GroupElement>& nucleus();  // {1, a, b, c, d}

// |G : St(n)|: order of the permutation group generated by the four
// level-n generator actions, by BFS closure. Capped by caps.group_level_cap.
std::uint64_t level_quotient_order(int level, const Caps& caps = default_caps());

// Index of the normal closure of the image of g inside the level-n quotient.
std::uint64_t normal_closure_index(const GroupElement& g, int level,
                                   const Caps& caps = default_caps());

// Bounded search for g in St(1) with wreath(g) = (target, 1, inactive),
// scanning reduced words up to max_length. Membership of g in any specific
// normal subgroup is not certified.
std::optional<GroupElement> search_section_preimage(const GroupElement& target,
                                                    int max_length);

// All reduced words of length <= max_length (identity included).
std::vector<GroupElement> reduced_words_up_to(int max_length);

void set_trivial_cache_capacity(std::size_t entries);
void clear_trivial_cache();

}  // namespace justinf::grig
