#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nmlkit {

enum class Connective : std::uint8_t { Not, And, Or, Imp, Iff, Xor, Xor3, True, False };

inline constexpr Connective kAllConnectives[] = {
    Connective::Not, Connective::And, Connective::Or,   Connective::Imp,  Connective::Iff,
    Connective::Xor, Connective::Xor3, Connective::True, Connective::False};

int arity(Connective c) noexcept;
/// Lower-case identifier used in relation names and basis lists ("and", "xor3", ...).
std::string_view connective_name(Connective c) noexcept;
std::optional<Connective> connective_from_name(std::string_view name) noexcept;
/// Truth function of `c` applied to `args` (args.size() == arity(c)).
bool apply_connective(Connective c, std::span<const bool> args) noexcept;

/// A finite set of Boolean connectives.
class Basis {
 public:
  Basis() = default;
  Basis(std::initializer_list<Connective> cs) {
    for (auto c : cs) insert(c);
  }

  /// Every connective the toolkit knows about.
  static Basis standard();
  /// Comma separated connective names, e.g. "not,and,or".
  static Basis parse(std::string_view list);

  void insert(Connective c) noexcept { mask_ |= bit(c); }
  bool contains(Connective c) const noexcept { return (mask_ & bit(c)) != 0; }
  bool empty() const noexcept { return mask_ == 0; }
  std::vector<Connective> connectives() const;
  std::string to_string() const;

  friend bool operator==(const Basis&, const Basis&) = default;

 private:
  static constexpr std::uint16_t bit(Connective c) noexcept {
    return static_cast<std::uint16_t>(1u << static_cast<unsigned>(c));
  }
  std::uint16_t mask_ = 0;
};

enum class FormulaKind : std::uint8_t { Var, Const, App, Believes };

/// Immutable propositional / autoepistemic formula with shared subterms.
///
/// Equality and ordering are structural; copies are cheap.
class Formula {
 public:
  static Formula var(std::string name);
  static Formula constant(bool value);
  /// Nullary True/False connectives collapse to constants.
  static Formula app(Connective op, std::vector<Formula> children);
  static Formula believes(Formula child);

  static Formula negation(Formula f) { return app(Connective::Not, {std::move(f)}); }
  static Formula conj(Formula a, Formula b) { return app(Connective::And, {std::move(a), std::move(b)}); }
  static Formula disj(Formula a, Formula b) { return app(Connective::Or, {std::move(a), std::move(b)}); }
  static Formula implies(Formula a, Formula b) { return app(Connective::Imp, {std::move(a), std::move(b)}); }

  FormulaKind kind() const noexcept;
  const std::string& name() const;  // Var only
  bool value() const;               // Const only
  Connective op() const;            // App only
  const std::vector<Formula>& children() const noexcept;
  const Formula& child(std::size_t i) const { return children().at(i); }

  bool is_atom() const noexcept {
    return kind() == FormulaKind::Var || kind() == FormulaKind::Believes;
  }
  bool is_autoepistemic() const noexcept;
  /// Number of tree nodes, counting repeated subterms every time.
  std::size_t node_count() const noexcept;
  std::size_t hash() const noexcept;

  /// Precedence-aware rendering in the input grammar; parses back to an equal formula.
  std::string to_string() const;

  friend bool operator==(const Formula& a, const Formula& b) noexcept;
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const noexcept { return f.hash(); }
};

/// Truth values for atoms: variables and Believes-subformulas (treated atomically).
using Assignment = std::map<Formula, bool>;

enum class FormulaMode { Propositional, Autoepistemic };

/// Parses one formula. Throws SyntaxError on malformed text, `L` in propositional
/// mode, or a connective outside `basis`.
Formula parse_formula(std::string_view text, FormulaMode mode, const Basis& basis = Basis::standard());

/// Truth value under `a`; Believes nodes read `a` without descending.
/// Throws InvalidInput when an atom is missing.
bool evaluate(const Formula& f, const Assignment& a);

/// All subtrees, deduplicated, post-order of first occurrence.
std::vector<Formula> subformulae(const Formula& f);
std::vector<Formula> subformulae(std::span<const Formula> fs);
/// Believes-rooted members of subformulae(fs), same order.
std::vector<Formula> belief_subformulae(std::span<const Formula> fs);

/// Atoms of `fs` (variables and maximal Believes-subformulas), sorted by printed text.
std::vector<Formula> atoms(std::span<const Formula> fs);

/// First satisfying assignment over atoms(gamma), enumerating atoms in sorted
/// order with false before true. Throws ResourceLimit above `atom_cap` atoms.
std::optional<Assignment> sat_bruteforce(std::span<const Formula> gamma, std::size_t atom_cap = 24);

/// F |= G by truth tables over the joint atom set.
bool implies_bruteforce(std::span<const Formula> f, std::span<const Formula> g, std::size_t atom_cap = 24);

/// Connectives used anywhere in `f`.
Basis connectives_used(const Formula& f);

}  // namespace nmlkit
