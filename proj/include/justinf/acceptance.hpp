#pragma once

// The built-in verification battery: twelve exact criteria covering the
// kernel certificate, the presentation, representation laws, irreducible
// decompositions, nucleus independence, the scalar-entry search, diagram
// quotients and ideal lattices, the dimension group, the index-16 normal
// closure, rigid-stabilizer kernel elements, and the model spaces.

#include <cstdint>
#include <string>
#include <vector>

namespace justinf::acceptance {

struct CriterionResult {
  std::string id;
  std::string title;
  bool pass = false;
  std::string detail;
};

std::vector<CriterionResult> run_battery(std::uint64_t seed = 20250810);

}  // namespace justinf::acceptance
