#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace nmlkit {

// Caps shared by every exponential routine. `from_env` reads overrides from
// NMLKIT_LIMITS, a comma separated key=value list, e.g.
//   NMLKIT_LIMITS="sat_atoms=20,dp_width=10"
struct Limits {
  std::size_t sat_atoms = 24;           // brute-force truth tables
  std::size_t tw_exact_vertices = 24;   // kernel size left after safe reductions
  std::size_t dp_width = 14;            // treewidth DP
  std::size_t dl_defaults = 20;         // candidate enumeration 2^|D|
  std::size_t ael_beliefs = 20;         // candidate enumeration 2^|SF_L|
  std::size_t clique_vertices = 64;     // pseudo-clique lower bound
  std::size_t mso_universe_single = 22; // one SO quantifier level
  std::size_t mso_universe_nested = 16; // two or more nested SO levels
  std::uint64_t mso_steps = 400'000'000;

  static Limits from_env();
  static Limits parse(const std::string& spec);
  static Limits parse(const std::string& spec, Limits base);
};

}  // namespace nmlkit
