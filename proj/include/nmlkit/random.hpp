#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "nmlkit/families.hpp"
#include "nmlkit/formula.hpp"
#include "nmlkit/graph.hpp"
#include "nmlkit/theory.hpp"

namespace nmlkit {

using Rng = std::mt19937_64;

struct FormulaShape {
  int variables = 3;              // x1..xv
  int max_depth = 3;
  Basis basis{Connective::Not, Connective::And, Connective::Or, Connective::Imp, Connective::True, Connective::False};
  double constant_rate = 0.05;    // chance a leaf is a constant of the basis
};

/// G(n, p).
Graph random_graph(Rng& rng, int n, double p);

/// n in [3, max_n], per-pair lengths in [0, max_k].
PseudoCliqueSpec random_pseudo_clique_spec(Rng& rng, int max_n, int max_k);

Formula random_formula(Rng& rng, const FormulaShape& shape);

/// Between 1 and `max_formulas` formulas with at most `max_subformulae`
/// distinct subformulae overall.
std::vector<Formula> random_formula_set(Rng& rng, const FormulaShape& shape, int max_formulas,
                                        int max_subformulae);

ImplicationInstance random_implication(Rng& rng, const FormulaShape& shape, int max_subformulae);

/// Premises plus a query formula, jointly within `max_subformulae`.
std::pair<std::vector<Formula>, Formula> random_entailment_query(Rng& rng, const FormulaShape& shape,
                                                                 int max_subformulae);

/// Every part of W and D a literal (prerequisites may also be true).
DefaultTheory random_literal_default_theory(Rng& rng, int max_defaults, int variables);

/// Parts are small random formulas.
DefaultTheory random_default_theory(Rng& rng, int max_defaults, int variables);

/// At most `max_beliefs` believes-subformulae and `max_subformulae` distinct
/// subformulae; believed formulas are variables or shallow formulas.
AeTheory random_ae_theory(Rng& rng, int max_beliefs, int max_subformulae, int variables);

}  // namespace nmlkit
