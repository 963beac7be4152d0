#include "justinf/io.hpp"

#include <map>

#include "justinf/errors.hpp"

namespace justinf::io {

namespace {

json integer_to_json(const k0::Integer& z) {
  if (z.fits_slong_p()) {
    long v = z.get_si();
    if (v >= -(1L << 53) && v <= (1L << 53)) return json(v);
  }
  return json(z.get_str());
}

k0::Integer integer_from_json(const json& j) {
  if (j.is_number_integer()) return k0::Integer(j.get<long>());
  if (j.is_string()) {
    try {
      return k0::Integer(j.get<std::string>());
    } catch (const std::invalid_argument&) {
      throw ParseError("bad integer literal: " + j.get<std::string>());
    }
  }
  throw ParseError("expected an integer or decimal string");
}

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw ParseError(std::string("missing field '") + name + "'");
  }
  return j.at(name);
}

int int_field(const json& j, const char* name) {
  const json& f = field(j, name);
  if (!f.is_number_integer()) throw ParseError(std::string("field '") + name + "' must be an integer");
  return f.get<int>();
}

}  // namespace

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON input");
  return j;
}

json to_json(const grig::WreathImage& w) {
  return json{{"first", w.first.word()}, {"second", w.second.word()}, {"active", w.active}};
}

json to_json(const grig::LevelPermutation& p) {
  return json{{"level", p.level}, {"map", p.map}};
}

grig::LevelPermutation level_permutation_from_json(const json& j) {
  grig::LevelPermutation p;
  p.level = int_field(j, "level");
  if (p.level < 0 || p.level > 22) throw ParseError("level out of range");
  const json& map = field(j, "map");
  if (!map.is_array() || map.size() != (std::size_t{1} << p.level)) {
    throw ParseError("permutation map has the wrong length");
  }
  std::vector<bool> seen(map.size(), false);
  for (const json& v : map) {
    if (!v.is_number_integer()) throw ParseError("permutation entries are integers");
    long t = v.get<long>();
    if (t < 0 || t >= static_cast<long>(map.size()) || seen[static_cast<std::size_t>(t)]) {
      throw ParseError("permutation map is not a bijection");
    }
    seen[static_cast<std::size_t>(t)] = true;
    p.map.push_back(static_cast<std::uint32_t>(t));
  }
  return p;
}

json to_json(const alg::AlgebraElement& x) {
  json terms = json::array();
  for (const auto& [g, q] : x.terms()) {
    terms.push_back(json{{"word", g.word()}, {"coeff", alg::rational_to_string(q)}});
  }
  return terms;
}

alg::AlgebraElement algebra_element_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("an algebra element is an array of terms");
  alg::AlgebraElement x;
  for (const json& t : j) {
    std::string word = field(t, "word").get<std::string>();
    std::string coeff = field(t, "coeff").is_string()
                            ? field(t, "coeff").get<std::string>()
                            : field(t, "coeff").dump();
    x.add_term(grig::GroupElement::parse(word), alg::rational_from_string(coeff));
  }
  return x;
}

json to_json(const alg::BlockMatrix& m) {
  json entries = json::array();
  for (const auto& [pos, e] : m.entries) {
    entries.push_back(json{{"row", pos.first}, {"col", pos.second}, {"value", to_json(e)}});
  }
  return json{{"depth", m.depth}, {"entries", entries}};
}

alg::BlockMatrix block_matrix_from_json(const json& j) {
  alg::BlockMatrix m;
  m.depth = int_field(j, "depth");
  if (m.depth < 0 || m.depth > 30) throw ParseError("depth out of range");
  for (const json& t : field(j, "entries")) {
    long row = field(t, "row").get<long>();
    long col = field(t, "col").get<long>();
    if (row < 0 || col < 0 || row >= m.size() || col >= m.size()) {
      throw ParseError("matrix entry out of range");
    }
    m.add(row, col, algebra_element_from_json(field(t, "value")));
  }
  return m;
}

json to_json(const alg::LevelMatrix& m) {
  json entries = json::array();
  for (long r = 0; r < m.size(); ++r) {
    for (long c = 0; c < m.size(); ++c) {
      if (m.at(r, c) != 0) {
        entries.push_back(
            json{{"row", r}, {"col", c}, {"value", alg::rational_to_string(m.at(r, c))}});
      }
    }
  }
  return json{{"level", m.level}, {"entries", entries}};
}

alg::LevelMatrix level_matrix_from_json(const json& j) {
  int level = int_field(j, "level");
  if (level < 0 || level > 12) throw ParseError("level out of range");
  alg::LevelMatrix m = alg::LevelMatrix::zeros(level);
  for (const json& t : field(j, "entries")) {
    long row = field(t, "row").get<long>();
    long col = field(t, "col").get<long>();
    if (row < 0 || col < 0 || row >= m.size() || col >= m.size()) {
      throw ParseError("matrix entry out of range");
    }
    m.at(row, col) = alg::rational_from_string(field(t, "value").get<std::string>());
  }
  return m;
}

json to_json(const bratteli::BratteliDiagram& d) {
  json levels = json::array();
  for (const auto& level : d.dims) levels.push_back(level);
  json edges = json::array();
  for (const auto& layer : d.edges) {
    json jl = json::array();
    for (const auto& e : layer) {
      jl.push_back(json{{"from", e.from}, {"to", e.to}, {"mult", e.mult}});
    }
    edges.push_back(jl);
  }
  json rule = (d.rule == "y_infty" || d.rule == "strictly_rfd") ? json(d.rule) : json(nullptr);
  return json{{"levels", levels}, {"edges", edges}, {"rule", rule}};
}

bratteli::BratteliDiagram diagram_from_json(const json& j) {
  bratteli::BratteliDiagram d;
  for (const json& level : field(j, "levels")) {
    std::vector<long long> dims;
    for (const json& k : level) {
      if (!k.is_number_integer()) throw ParseError("vertex dimensions are integers");
      dims.push_back(k.get<long long>());
    }
    d.dims.push_back(std::move(dims));
  }
  for (const json& layer : field(j, "edges")) {
    std::vector<bratteli::Edge> edges;
    for (const json& e : layer) {
      edges.push_back({int_field(e, "from"), int_field(e, "to"),
                       e.contains("mult") ? int_field(e, "mult") : 1});
    }
    d.edges.push_back(std::move(edges));
  }
  const json& rule = field(j, "rule");
  if (!rule.is_null()) {
    std::string name = rule.get<std::string>();
    bratteli::BratteliDiagram built;
    if (name == "y_infty") {
      built = bratteli::build_y_infty(d.depth());
    } else if (name == "strictly_rfd") {
      built = bratteli::build_strictly_rfd(d.depth());
    } else {
      throw ParseError("unknown diagram rule: " + name);
    }
    if (built.dims != d.dims || built.edges != d.edges) {
      throw ParseError("diagram data does not match its declared rule");
    }
    return built;
  }
  try {
    d.validate();
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  return d;
}

json to_json(const bratteli::DiagramIdeal& u) {
  json members = json::array();
  for (const auto& level : u.members) members.push_back(level);
  return json{{"members", members}, {"description", u.description}};
}

bratteli::DiagramIdeal diagram_ideal_from_json(const json& j) {
  bratteli::DiagramIdeal u;
  for (const json& level : field(j, "members")) {
    std::set<int> s;
    for (const json& p : level) {
      if (!p.is_number_integer()) throw ParseError("ideal members are vertex positions");
      s.insert(p.get<int>());
    }
    u.members.push_back(std::move(s));
  }
  if (j.contains("description") && j.at("description").is_string()) {
    u.description = j.at("description").get<std::string>();
  }
  return u;
}

json to_json(const k0::K0Element& x) {
  json vec = json::array();
  for (const auto& c : x.vector()) vec.push_back(integer_to_json(c));
  return json{{"level", x.level()}, {"vector", vec}};
}

k0::K0Element k0_element_from_json(const json& j) {
  const json& vec = field(j, "vector");
  if (!vec.is_array() || vec.empty()) throw ParseError("K0 vectors are nonempty arrays");
  std::vector<k0::Integer> v;
  for (const json& c : vec) v.push_back(integer_from_json(c));
  int level = int_field(j, "level");
  if (level != static_cast<int>(v.size())) {
    throw ParseError("level does not match the vector length");
  }
  return k0::K0Element(std::move(v));
}

json to_json(const k0::ModelSequence& s, int expand_terms) {
  json prefix = json::array();
  for (const auto& c : s.prefix) prefix.push_back(integer_to_json(c));
  json out{{"prefix", prefix}, {"recurrent_from", s.recurrent_from}};
  if (expand_terms > 0) {
    json terms = json::array();
    for (const auto& c : s.expand(expand_terms)) terms.push_back(integer_to_json(c));
    out["terms"] = terms;
  }
  return out;
}

json to_json(const space::FiniteT0Space& s) {
  json closed = json::array();
  for (space::PointSet c : s.closed_sets()) {
    json names = json::array();
    for (std::size_t p = 0; p < s.point_count(); ++p) {
      if ((c >> p) & 1u) names.push_back(s.points()[p]);
    }
    closed.push_back(names);
  }
  return json{{"points", s.points()}, {"closed", closed}};
}

space::FiniteT0Space space_from_json(const json& j) {
  std::vector<std::string> points;
  for (const json& p : field(j, "points")) points.push_back(p.get<std::string>());
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < points.size(); ++i) index[points[i]] = i;
  std::vector<space::PointSet> closed;
  for (const json& set : field(j, "closed")) {
    space::PointSet mask = 0;
    for (const json& name : set) {
      auto it = index.find(name.get<std::string>());
      if (it == index.end()) throw ParseError("closed set names unknown point " + name.dump());
      mask |= space::PointSet{1} << it->second;
    }
    closed.push_back(mask);
  }
  try {
    return space::FiniteT0Space::create(std::move(points), std::move(closed));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

}  // namespace justinf::io
