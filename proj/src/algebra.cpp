#include "justinf/algebra.hpp"

#include <stdexcept>

#include "justinf/errors.hpp"

namespace justinf::alg {

namespace {

void check_depth(int depth, const Caps& caps) {
  if (depth < 0) throw DomainError("depth must be >= 0");
  if (depth > caps.depth_cap) {
    throw ResourceError("depth " + std::to_string(depth) + " exceeds depth cap " +
                        std::to_string(caps.depth_cap));
  }
}

void check_matrix_level(int level, const Caps& caps) {
  if (level < 0) throw DomainError("level must be >= 0");
  if (level > caps.matrix_level_cap) {
    throw ResourceError("level " + std::to_string(level) + " exceeds matrix level cap " +
                        std::to_string(caps.matrix_level_cap));
  }
}

// mpq arithmetic requires canonical operands; user-supplied rationals may
// arrive as e.g. (-3, 6).
Rational canonical(Rational q) {
  mpq_canonicalize(q.get_mpq_t());
  return q;
}

const grig::GroupElement& gen_elem(char c) {
  static const auto a = grig::GroupElement::from_normal("a");
  static const auto b = grig::GroupElement::from_normal("b");
  static const auto cc = grig::GroupElement::from_normal("c");
  static const auto d = grig::GroupElement::from_normal("d");
  static const auto e = grig::GroupElement::identity();
  switch (c) {
    case 'a': return a;
    case 'b': return b;
    case 'c': return cc;
    case 'd': return d;
    default: return e;
  }
}

}  // namespace

AlgebraElement AlgebraElement::word(const grig::GroupElement& g, const Rational& coeff) {
  AlgebraElement x;
  x.add_term(g, coeff);
  return x;
}

Rational AlgebraElement::coeff(const grig::GroupElement& g) const {
  auto it = terms_.find(g);
  return it == terms_.end() ? Rational(0) : it->second;
}

bool AlgebraElement::in_nucleus_span() const {
  for (const auto& [g, q] : terms_) {
    if (g.length() > 1) return false;
  }
  return true;
}

std::optional<Rational> AlgebraElement::as_scalar() const {
  if (terms_.size() != 1) return std::nullopt;
  const auto& [g, q] = *terms_.begin();
  if (!g.is_identity_word()) return std::nullopt;
  return q;
}

void AlgebraElement::add_term(const grig::GroupElement& g, const Rational& raw_coeff) {
  Rational coeff = canonical(raw_coeff);
  if (coeff == 0) return;
  auto [it, inserted] = terms_.emplace(g, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second == 0) terms_.erase(it);
  }
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement& rhs) const {
  AlgebraElement out = *this;
  for (const auto& [g, q] : rhs.terms_) out.add_term(g, q);
  return out;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement& rhs) const {
  AlgebraElement out = *this;
  for (const auto& [g, q] : rhs.terms_) out.add_term(g, -q);
  return out;
}

AlgebraElement AlgebraElement::operator-() const {
  AlgebraElement out;
  for (const auto& [g, q] : terms_) out.terms_.emplace(g, -q);
  return out;
}

AlgebraElement AlgebraElement::operator*(const AlgebraElement& rhs) const {
  AlgebraElement out;
  for (const auto& [g, p] : terms_) {
    for (const auto& [h, q] : rhs.terms_) out.add_term(g * h, p * q);
  }
  return out;
}

AlgebraElement AlgebraElement::scaled(const Rational& raw_s) const {
  AlgebraElement out;
  Rational s = canonical(raw_s);
  if (s == 0) return out;
  for (const auto& [g, q] : terms_) out.terms_.emplace(g, q * s);
  return out;
}

AlgebraElement star(const AlgebraElement& x) {
  AlgebraElement out;
  for (const auto& [g, q] : x.terms()) out.add_term(g.inverse(), q);
  return out;
}

BlockMatrix BlockMatrix::scalar(const AlgebraElement& x) {
  BlockMatrix m;
  m.depth = 0;
  if (!x.is_zero()) m.entries.emplace(std::make_pair(0L, 0L), x);
  return m;
}

const AlgebraElement* BlockMatrix::find(long row, long col) const {
  auto it = entries.find({row, col});
  return it == entries.end() ? nullptr : &it->second;
}

AlgebraElement BlockMatrix::at(long row, long col) const {
  const AlgebraElement* p = find(row, col);
  return p ? *p : AlgebraElement::zero();
}

void BlockMatrix::add(long row, long col, const AlgebraElement& x) {
  if (x.is_zero()) return;
  auto key = std::make_pair(row, col);
  auto it = entries.find(key);
  if (it == entries.end()) {
    entries.emplace(key, x);
    return;
  }
  it->second = it->second + x;
  if (it->second.is_zero()) entries.erase(it);
}

bool BlockMatrix::all_nucleus_span() const {
  for (const auto& [pos, x] : entries) {
    if (!x.in_nucleus_span()) return false;
  }
  return true;
}

BlockMatrix BlockMatrix::operator*(const BlockMatrix& rhs) const {
  if (depth != rhs.depth) throw DomainError("depth mismatch in block matrix product");
  BlockMatrix out;
  out.depth = depth;
  for (const auto& [lpos, x] : entries) {
    for (const auto& [rpos, y] : rhs.entries) {
      if (lpos.second != rpos.first) continue;
      out.add(lpos.first, rpos.second, x * y);
    }
  }
  return out;
}

BlockMatrix expand_once(const BlockMatrix& m) {
  BlockMatrix out;
  out.depth = m.depth + 1;
  for (const auto& [pos, x] : m.entries) {
    BlockMatrix sub = psi_expand(x);
    for (const auto& [spos, e] : sub.entries) {
      out.add(2 * pos.first + spos.first, 2 * pos.second + spos.second, e);
    }
  }
  return out;
}

BlockMatrix psi_expand(const AlgebraElement& x) {
  BlockMatrix out;
  out.depth = 1;
  for (const auto& [g, q] : x.terms()) {
    grig::WreathImage w = grig::wreath(g);
    long row0 = w.active ? 1 : 0;
    out.add(row0, 0, AlgebraElement::word(w.first, q));
    out.add(1 - row0, 1, AlgebraElement::word(w.second, q));
  }
  return out;
}

BlockMatrix psi_iterate(const AlgebraElement& x, int depth, const Caps& caps) {
  check_depth(depth, caps);
  BlockMatrix m = BlockMatrix::scalar(x);
  for (int i = 0; i < depth; ++i) m = expand_once(m);
  return m;
}

NucleusReduction reduce_to_nucleus(const AlgebraElement& x, const Caps& caps) {
  NucleusReduction red;
  red.matrix = BlockMatrix::scalar(x);
  while (!red.matrix.all_nucleus_span()) {
    if (red.depth >= caps.depth_cap) {
      throw ResourceError("nucleus reduction exceeds depth cap " +
                          std::to_string(caps.depth_cap));
    }
    red.matrix = expand_once(red.matrix);
    ++red.depth;
  }
  return red;
}

KernelCertificate is_zero_in_B(const AlgebraElement& x, const Caps& caps) {
  NucleusReduction red = reduce_to_nucleus(x, caps);
  KernelCertificate cert;
  cert.depth = red.depth;
  if (red.matrix.is_zero()) {
    cert.in_kernel = true;
    return cert;
  }
  const auto& [pos, entry] = *red.matrix.entries.begin();
  cert.in_kernel = false;
  cert.row = pos.first;
  cert.col = pos.second;
  cert.entry = entry;
  return cert;
}

ScalarWitness scalar_entry_case_analysis(const AlgebraElement& x, const Caps& caps) {
  NucleusReduction red = reduce_to_nucleus(x, caps);
  if (red.matrix.is_zero()) throw DomainError("element is in the kernel");

  const auto& [pos, first_entry] = *red.matrix.entries.begin();
  AlgebraElement e = first_entry;
  int depth = red.depth;
  long row = pos.first;
  long col = pos.second;

  auto ensure_depth = [&](int d) {
    if (d > caps.depth_cap) {
      throw ResourceError("scalar witness depth " + std::to_string(d) + " exceeds depth cap " +
                          std::to_string(caps.depth_cap));
    }
  };

  // A nonzero nucleus-span entry yields a scalar within five expansions:
  // xi != 0 after one; beta+gamma or delta+rho != 0 after two; otherwise the
  // (1,1) block vanishes and the chase continues in the (2,2) block, which
  // can stay in the residual case at most twice.
  for (int guard = 0; guard < 8; ++guard) {
    Rational rho = e.coeff(gen_elem('1'));
    Rational xi = e.coeff(gen_elem('a'));
    Rational beta = e.coeff(gen_elem('b'));
    Rational gamma = e.coeff(gen_elem('c'));
    Rational delta = e.coeff(gen_elem('d'));

    if (xi == 0 && beta == 0 && gamma == 0 && delta == 0) {
      return {depth, row, col, rho};
    }
    if (xi != 0) {
      ensure_depth(depth + 1);
      return {depth + 1, 2 * row, 2 * col + 1, xi};
    }
    if (beta + gamma != 0) {
      ensure_depth(depth + 2);
      return {depth + 2, 4 * row, 4 * col + 1, beta + gamma};
    }
    if (delta + rho != 0) {
      ensure_depth(depth + 2);
      return {depth + 2, 4 * row, 4 * col, delta + rho};
    }
    ensure_depth(depth + 1);
    e = psi_expand(e).at(1, 1);
    row = 2 * row + 1;
    col = 2 * col + 1;
    ++depth;
  }
  throw std::logic_error("scalar entry case analysis did not terminate");
}

ScalarWitness find_scalar_entry(const AlgebraElement& x, const Caps& caps) {
  ScalarWitness bound = scalar_entry_case_analysis(x, caps);
  BlockMatrix m = BlockMatrix::scalar(x);
  for (int d = 0;; ++d) {
    for (const auto& [pos, e] : m.entries) {
      if (auto lambda = e.as_scalar()) {
        return {d, pos.first, pos.second, *lambda};
      }
    }
    if (d >= bound.depth) break;
    m = expand_once(m);
  }
  throw std::logic_error("depth scan missed the case-analysis witness");
}

LevelMatrix LevelMatrix::zeros(int level) {
  LevelMatrix m;
  m.level = level;
  m.data.assign(std::size_t{1} << (2 * level), Rational(0));
  return m;
}

LevelMatrix LevelMatrix::identity(int level) {
  LevelMatrix m = zeros(level);
  for (long v = 0; v < m.size(); ++v) m.at(v, v) = 1;
  return m;
}

bool LevelMatrix::is_zero() const {
  for (const auto& q : data) {
    if (q != 0) return false;
  }
  return true;
}

LevelMatrix LevelMatrix::operator*(const LevelMatrix& rhs) const {
  if (level != rhs.level) throw DomainError("level mismatch in matrix product");
  LevelMatrix out = zeros(level);
  const long n = size();
  for (long i = 0; i < n; ++i) {
    for (long k = 0; k < n; ++k) {
      const Rational& f = at(i, k);
      if (f == 0) continue;
      for (long j = 0; j < n; ++j) {
        const Rational& g = rhs.at(k, j);
        if (g == 0) continue;
        out.at(i, j) += f * g;
      }
    }
  }
  return out;
}

LevelMatrix LevelMatrix::transpose() const {
  LevelMatrix out = zeros(level);
  for (long i = 0; i < size(); ++i) {
    for (long j = 0; j < size(); ++j) out.at(j, i) = at(i, j);
  }
  return out;
}

LevelMatrix pi_level(const AlgebraElement& x, int level, const Caps& caps) {
  check_matrix_level(level, caps);
  LevelMatrix m = LevelMatrix::zeros(level);
  for (const auto& [g, q] : x.terms()) {
    grig::LevelPermutation p = grig::level_permutation(g, level);
    for (long v = 0; v < m.size(); ++v) m.at(p.map[static_cast<std::size_t>(v)], v) += q;
  }
  return m;
}

int commutant_dimension(int level, const Caps& caps) {
  if (level < 1) throw DomainError("level must be >= 1");
  check_matrix_level(level, caps);
  std::vector<std::vector<std::uint32_t>> gens;
  for (char c : {'a', 'b', 'c', 'd'}) {
    gens.push_back(
        grig::level_permutation(grig::GroupElement::from_normal(std::string(1, c)), level).map);
  }
  const std::size_t n = std::size_t{1} << level;
  std::vector<bool> visited(n * n, false);
  int orbits = 0;
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < n * n; ++start) {
    if (visited[start]) continue;
    ++orbits;
    visited[start] = true;
    stack.assign(1, start);
    while (!stack.empty()) {
      std::size_t pair = stack.back();
      stack.pop_back();
      std::size_t u = pair / n;
      std::size_t v = pair % n;
      for (const auto& s : gens) {
        std::size_t next = static_cast<std::size_t>(s[u]) * n + s[v];
        if (!visited[next]) {
          visited[next] = true;
          stack.push_back(next);
        }
      }
    }
  }
  return orbits;
}

int nucleus_rank_at_level(int level, const Caps& caps) {
  check_matrix_level(level, caps);
  std::vector<std::vector<Rational>> rows;
  for (char c : {'1', 'a', 'b', 'c', 'd'}) {
    AlgebraElement x = AlgebraElement::word(gen_elem(c));
    rows.push_back(pi_level(x, level, caps).data);
  }
  const std::size_t cols = rows[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][col] == 0) continue;
      Rational f = rows[r][col] / rows[rank][col];
      for (std::size_t j = col; j < cols; ++j) rows[r][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return static_cast<int>(rank);
}

AlgebraElement rigid_kernel_element(const grig::GroupElement& g1, const grig::GroupElement& g2) {
  if (grig::is_trivial(g1)) throw DomainError("g1 is trivial");
  if (grig::is_trivial(g2)) throw DomainError("g2 is trivial");
  grig::WreathImage w1 = grig::wreath(g1);
  if (w1.active) throw DomainError("g1 is active at the root");
  if (!grig::is_trivial(w1.second)) {
    throw DomainError("g1 acts nontrivially inside the subtree at vertex 1");
  }
  grig::WreathImage w2 = grig::wreath(g2);
  if (w2.active) throw DomainError("g2 is active at the root");
  if (!grig::is_trivial(w2.first)) {
    throw DomainError("g2 acts nontrivially inside the subtree at vertex 0");
  }

  const grig::GroupElement one;
  const grig::GroupElement prod = g1 * g2;
  const grig::GroupElement words[4] = {one, g1, g2, prod};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (words[i] == words[j]) throw DomainError("the four product words are not distinct");
    }
  }

  AlgebraElement x = AlgebraElement::one();
  x.add_term(g1, -1);
  x.add_term(g2, -1);
  x.add_term(prod, 1);
  return x;
}

AlgebraElement delta_generator(const grig::GroupElement& k) {
  AlgebraElement x = AlgebraElement::word(k);
  x.add_term(grig::GroupElement::identity(), -1);
  return x;
}

std::string rational_to_string(const Rational& q) { return canonical(q).get_str(); }

Rational rational_from_string(const std::string& s) {
  if (s.empty()) throw ParseError("empty rational literal");
  for (char c : s) {
    if (!(c == '-' || c == '/' || (c >= '0' && c <= '9'))) {
      throw ParseError("bad rational literal: " + s);
    }
  }
  try {
    Rational q(s, 10);
    if (q.get_den() == 0) throw ParseError("zero denominator: " + s);
    mpq_canonicalize(q.get_mpq_t());
    return q;
  } catch (const std::invalid_argument&) {
    throw ParseError("bad rational literal: " + s);
  }
}

}  // namespace justinf::alg
