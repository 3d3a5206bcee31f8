#include "nmlkit/dl.hpp"

#include <algorithm>

#include "nmlkit/error.hpp"

namespace nmlkit {

StageResult stage_fixpoint(const DefaultTheory& theory, const std::vector<int>& candidate,
                           const EntailmentOracle& oracle) {
  const std::size_t m = theory.d.size();
  for (int i : candidate)
    if (i < 0 || static_cast<std::size_t>(i) >= m) throw InvalidInput("candidate names an unknown rule");

  std::vector<Formula> with_candidate = theory.w;
  for (int i : candidate) with_candidate.push_back(theory.d[static_cast<std::size_t>(i)].conclusion);
  std::vector<char> blocked(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    blocked[i] = oracle.entails(with_candidate, Formula::negation(theory.d[i].justification));

  std::vector<char> applied(m, 0);
  std::vector<Formula> known = theory.w;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < m; ++i) {
      if (applied[i] || blocked[i]) continue;
      if (!oracle.entails(known, theory.d[i].prerequisite)) continue;
      applied[i] = 1;
      known.push_back(theory.d[i].conclusion);
      changed = true;
    }
  }
  StageResult r;
  for (std::size_t i = 0; i < m; ++i)
    if (applied[i]) r.applied.push_back(static_cast<int>(i));
  std::vector<int> wanted = candidate;
  std::sort(wanted.begin(), wanted.end());
  wanted.erase(std::unique(wanted.begin(), wanted.end()), wanted.end());
  r.fixpoint = r.applied == wanted;
  return r;
}

ExtensionResult extension_exists(const DefaultTheory& theory, const EntailmentOracle& oracle, const Limits& limits) {
  const std::size_t m = theory.d.size();
  if (m > limits.dl_defaults || m > 62)
    throw ResourceLimit("extension enumeration: " + std::to_string(m) + " defaults exceed the cap of " +
                        std::to_string(limits.dl_defaults));
  ExtensionResult result;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
    std::vector<int> candidate;
    for (std::size_t i = 0; i < m; ++i)
      if (bits >> i & 1u) candidate.push_back(static_cast<int>(i));
    if (stage_fixpoint(theory, candidate, oracle).fixpoint) result.witnesses.push_back({std::move(candidate)});
  }
  result.exists = !result.witnesses.empty();
  return result;
}

}  // namespace nmlkit
