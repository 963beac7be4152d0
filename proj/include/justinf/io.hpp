#pragma once

// JSON wire formats:
//   words                 strings over "abcd" ("" is the identity)
//   level permutations    {level, map: [0-based targets in vertex order]}
//   algebra elements      [{word, coeff: "p/q"}, ...]
//   block/level matrices  {depth|level, entries: [{row, col, value}, ...]}
//   diagrams              {levels: [[dims]], edges: [[{from,to,mult}]], rule}
//   diagram ideals        {members: [[positions]], description}
//   K0 elements           {level, vector}
//   spaces                {points: [names], closed: [[names]]}

#include <string>

#include "json.hpp"
#include "justinf/algebra.hpp"
#include "justinf/bratteli.hpp"
#include "justinf/grig.hpp"
#include "justinf/k0.hpp"
#include "justinf/primspace.hpp"

namespace justinf::io {

using json = nlohmann::json;

json to_json(const grig::WreathImage& w);
json to_json(const grig::LevelPermutation& p);
grig::LevelPermutation level_permutation_from_json(const json& j);

json to_json(const alg::AlgebraElement& x);
alg::AlgebraElement algebra_element_from_json(const json& j);
json to_json(const alg::BlockMatrix& m);
alg::BlockMatrix block_matrix_from_json(const json& j);
json to_json(const alg::LevelMatrix& m);
alg::LevelMatrix level_matrix_from_json(const json& j);

json to_json(const bratteli::BratteliDiagram& d);
// Diagrams declaring a builder rule are reconstructed from it and checked
// against the payload, which restores the growth metadata; plain diagrams
// are validated structurally and carry no exactness claims.
bratteli::BratteliDiagram diagram_from_json(const json& j);
json to_json(const bratteli::DiagramIdeal& u);
bratteli::DiagramIdeal diagram_ideal_from_json(const json& j);

json to_json(const k0::K0Element& x);
k0::K0Element k0_element_from_json(const json& j);
json to_json(const k0::ModelSequence& s, int expand_terms = 0);

json to_json(const space::FiniteT0Space& s);
space::FiniteT0Space space_from_json(const json& j);

// Wrapper that converts json parse exceptions into ParseError.
json parse(const std::string& text);

}  // namespace justinf::io
