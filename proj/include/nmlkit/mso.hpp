#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "nmlkit/formula.hpp"
#include "nmlkit/limits.hpp"
#include "nmlkit/structures.hpp"

namespace nmlkit {

enum class MsoKind : std::uint8_t {
  True, False, Rel, Eq, In, Not, And, Or, Imp, Iff, Xor, ExistsFO, ForallFO, ExistsSO, ForallSO
};

/// Immutable MSO syntax tree. First-order variables start with a lower-case
/// letter, set variables with an upper-case letter.
///
/// Text form: `true`, `false`, `R(x,y)`, `x = y`, `x in X`, `~f`,
/// `(f & g & h)`, `(f | g)`, `(f -> g)`, `(f <-> g)`, `(f ^ g)`,
/// `E x. f`, `A x. f`, `E X. f`, `A X. f`. A quantifier body is a single unit,
/// so binary formulas under a quantifier are always parenthesised.
class MsoFormula {
 public:
  static MsoFormula truth(bool value);
  static MsoFormula rel(std::string name, std::vector<std::string> args);
  static MsoFormula eq(std::string x, std::string y);
  static MsoFormula in(std::string x, std::string set);
  static MsoFormula neg(MsoFormula f);
  /// Empty conjunction is true, a single conjunct is returned unchanged.
  static MsoFormula conj(std::vector<MsoFormula> fs);
  /// Empty disjunction is false, a single disjunct is returned unchanged.
  static MsoFormula disj(std::vector<MsoFormula> fs);
  static MsoFormula imp(MsoFormula a, MsoFormula b);
  static MsoFormula iff(MsoFormula a, MsoFormula b);
  static MsoFormula xor_(MsoFormula a, MsoFormula b);
  /// Quantifier over elements or sets, chosen by the case of `var`.
  static MsoFormula exists(std::string var, MsoFormula body);
  static MsoFormula forall(std::string var, MsoFormula body);

  MsoKind kind() const noexcept;
  /// Relation name (Rel), set variable (In) or bound variable (quantifiers).
  const std::string& name() const noexcept;
  /// Relation arguments (Rel), both sides (Eq), the element (In).
  const std::vector<std::string>& args() const noexcept;
  const std::vector<MsoFormula>& children() const noexcept;

  std::size_t node_count() const noexcept;
  /// Deepest nesting of set quantifiers.
  int so_depth() const noexcept;
  std::string to_string() const;

  friend bool operator==(const MsoFormula& a, const MsoFormula& b) noexcept;

 private:
  friend struct MsoBuild;
  struct Node;
  explicit MsoFormula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

bool is_set_variable(std::string_view name) noexcept;

/// Parses the text form; throws SyntaxError.
MsoFormula parse_mso(std::string_view text);

/// Values for free variables.
struct MsoEnv {
  std::map<std::string, int> elements;
  std::map<std::string, std::vector<int>> sets;
};

struct MsoStats {
  std::uint64_t steps = 0;
  std::uint64_t memo_hits = 0;
  std::uint64_t branches = 0;
};

/// Decides s |= phi under `env`.
///
/// Set quantifiers are expanded lazily: the body is evaluated in Kleene
/// logic under a partial set and only the memberships it consults are
/// branched on. Results of set quantifiers are memoised on the values of
/// their free variables. Throws ResourceLimit when the universe exceeds the
/// cap for the formula's set-quantifier nesting or the step budget runs out,
/// and InvalidInput for unknown relations or unbound variables.
bool eval_mso(const RelationalStructure& s, const MsoFormula& phi, const MsoEnv& env = {},
              const Limits& limits = Limits{}, MsoStats* stats = nullptr);

enum class PaperFormula { Struc, Assign, Sat, Imp, Extension, FullExists };
enum class FormulaVariant { AsPrinted, Corrected };
/// Which structure the formula is meant for; affects the structural check.
enum class StructureKind { Prop, Imp, Dl, Ae };

PaperFormula paper_formula_from_name(std::string_view name);
std::string_view paper_formula_name(PaperFormula f) noexcept;

/// The closed sentences for sat, imp, extension and full_exists, theta_struc,
/// and the open theta_assign(M). Extension and full_exists always add
/// negation to the basis, matching the structure builders.
MsoFormula paper_formula(PaperFormula name, const Basis& basis, FormulaVariant variant,
                         StructureKind kind = StructureKind::Prop);

}  // namespace nmlkit
