#pragma once

#include <string>
#include <vector>

#include "qmdc/graph.hpp"

namespace qmdc {

// A named code construction bundled with its published properties, used by
// the verification commands.  The aut_order is the order of the certified
// automorphism subgroup (translations and negation of the base group).
struct Fixture {
  std::string name;
  MdcSpec spec;
  int n = 0;
  int claimed_d = 0;
  int claimed_valency = 0;
  int claimed_clique = 0;
  int claimed_diameter = 0;
  int claimed_girth = 0;
  long long claimed_aut = 0;
};

// The embedded fixture table, Q51 through Q57.  Each entry is sanity
// checked on first access (spec validity, connection count against the
// stated valency, group order against the stated length); a corrupted
// table throws std::logic_error.
const std::vector<Fixture>& fixtures();

// Lookup by name, case-insensitive; throws std::invalid_argument when the
// name is unknown.
const Fixture& fixture(const std::string& name);

}  // namespace qmdc
