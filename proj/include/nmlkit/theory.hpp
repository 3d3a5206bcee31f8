#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nmlkit/formula.hpp"

namespace nmlkit {

/// Default rule alpha : beta / gamma.
struct DefaultRule {
  Formula prerequisite;
  Formula justification;
  Formula conclusion;

  std::string to_string() const;
  friend bool operator==(const DefaultRule&, const DefaultRule&) = default;
};

/// (W, D). Rules keep file order; equal rules stay distinct.
struct DefaultTheory {
  std::vector<Formula> w;
  std::vector<DefaultRule> d;

  friend bool operator==(const DefaultTheory&, const DefaultTheory&) = default;
};

struct AeTheory {
  std::vector<Formula> sigma;

  friend bool operator==(const AeTheory&, const AeTheory&) = default;
};

/// Premises F and conclusions G of an implication query.
struct ImplicationInstance {
  std::vector<Formula> premises;
  std::vector<Formula> conclusions;

  friend bool operator==(const ImplicationInstance&, const ImplicationInstance&) = default;
};

// Line-oriented text formats. `#` starts a comment; blank lines are ignored.
// Syntax errors carry the 1-based line and column within the whole file.

/// `w: <formula>` and `d: <alpha> ; <beta> ; <gamma>` lines.
DefaultTheory parse_default_theory(std::string_view text, const Basis& basis = Basis::standard());
std::string write_default_theory(const DefaultTheory& t);

/// One autoepistemic formula per line.
AeTheory parse_ae_theory(std::string_view text, const Basis& basis = Basis::standard());
std::string write_ae_theory(const AeTheory& t);

/// One propositional formula per line.
std::vector<Formula> parse_formula_set(std::string_view text, const Basis& basis = Basis::standard());
std::string write_formula_set(const std::vector<Formula>& fs);

/// `p: <formula>` premise lines and `c: <formula>` conclusion lines.
ImplicationInstance parse_implication(std::string_view text, const Basis& basis = Basis::standard());
std::string write_implication(const ImplicationInstance& inst);

}  // namespace nmlkit
