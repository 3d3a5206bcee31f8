#pragma once

#include <vector>

#include "nmlkit/limits.hpp"
#include "nmlkit/theory.hpp"
#include "nmlkit/twdp.hpp"

namespace nmlkit {

/// Polarity choice over SF_L(sigma): for each believes-subformula L(phi), in
/// the order of belief_subformulae, either L(phi) (true) or not-L(phi) (false).
struct FullSetCandidate {
  std::vector<Formula> beliefs;
  std::vector<bool> positive;

  /// The set Lambda as formulas: L(phi) or its negation.
  std::vector<Formula> literals() const;

  friend bool operator==(const FullSetCandidate&, const FullSetCandidate&) = default;
};

/// Sigma together with Lambda entails phi exactly for the positive L(phi).
bool is_full(const AeTheory& sigma, const FullSetCandidate& lambda, const EntailmentOracle& oracle);

struct ExpansionResult {
  bool exists = false;
  std::vector<FullSetCandidate> full_sets;  // binary counting order, negative = 0
};

/// Checks all 2^|SF_L| candidates; the first belief is the least significant
/// bit. Throws ResourceLimit above `limits.ael_beliefs` beliefs.
ExpansionResult expansion_exists(const AeTheory& sigma, const EntailmentOracle& oracle,
                                 const Limits& limits = Limits{});

}  // namespace nmlkit
