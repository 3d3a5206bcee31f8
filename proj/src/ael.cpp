#include "nmlkit/ael.hpp"

#include "nmlkit/error.hpp"

namespace nmlkit {

std::vector<Formula> FullSetCandidate::literals() const {
  std::vector<Formula> out;
  for (std::size_t i = 0; i < beliefs.size(); ++i)
    out.push_back(positive[i] ? beliefs[i] : Formula::negation(beliefs[i]));
  return out;
}

bool is_full(const AeTheory& sigma, const FullSetCandidate& lambda, const EntailmentOracle& oracle) {
  if (lambda.beliefs != belief_subformulae(sigma.sigma) || lambda.positive.size() != lambda.beliefs.size())
    throw InvalidInput("candidate does not range over the believes-subformulae of the theory");
  std::vector<Formula> premises = sigma.sigma;
  const auto lits = lambda.literals();
  premises.insert(premises.end(), lits.begin(), lits.end());
  for (std::size_t i = 0; i < lambda.beliefs.size(); ++i)
    if (oracle.entails(premises, lambda.beliefs[i].child(0)) != lambda.positive[i]) return false;
  return true;
}

ExpansionResult expansion_exists(const AeTheory& sigma, const EntailmentOracle& oracle, const Limits& limits) {
  const auto beliefs = belief_subformulae(sigma.sigma);
  const std::size_t k = beliefs.size();
  if (k > limits.ael_beliefs || k > 62)
    throw ResourceLimit("full-set enumeration: " + std::to_string(k) + " believes-subformulae exceed the cap of " +
                        std::to_string(limits.ael_beliefs));
  ExpansionResult result;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << k); ++bits) {
    FullSetCandidate c{beliefs, std::vector<bool>(k)};
    for (std::size_t i = 0; i < k; ++i) c.positive[i] = (bits >> i & 1u) != 0;
    if (is_full(sigma, c, oracle)) result.full_sets.push_back(std::move(c));
  }
  result.exists = !result.full_sets.empty();
  return result;
}

}  // namespace nmlkit
