#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "nmlkit/formula.hpp"
#include "nmlkit/graph.hpp"
#include "nmlkit/limits.hpp"
#include "nmlkit/treewidth.hpp"

namespace nmlkit {

/// Local condition on the truth values of a few formula elements.
struct Constraint {
  enum class Kind { Node, Unit } kind;
  int element;                // the constrained element (Node: the parent)
  std::vector<int> arguments; // Node: argument elements in order
  Connective op = Connective::True;  // Node: connective at the parent
  bool value = true;                 // Unit: required value

  /// element plus arguments, ascending and deduplicated.
  std::vector<int> scope() const;
};

/// One vertex per formula element (believes nodes are opaque atoms); each
/// node forms a clique with its arguments, so every constraint scope lies
/// inside some bag of any decomposition.
struct ConstraintGraph {
  Graph graph;
  std::vector<Formula> elements;
  std::vector<Constraint> constraints;
};

/// Elements are the subformulae of gamma; members of gamma are forced true.
ConstraintGraph constraint_graph(std::span<const Formula> gamma);

struct DpRun {
  bool satisfiable = false;
  int width = -1;
  std::size_t nice_nodes = 0;
};

/// Satisfiability by dynamic programming over a nice decomposition of the
/// constraint graph. Uses min-fill when `td` is absent. Throws ResourceLimit
/// when the width exceeds `width_cap`, InvalidInput when `td` is not a
/// decomposition of the constraint graph.
DpRun dp_sat_run(std::span<const Formula> gamma, const TreeDecomposition* td = nullptr,
                 std::size_t width_cap = 14);
bool dp_sat(std::span<const Formula> gamma, const TreeDecomposition* td = nullptr, std::size_t width_cap = 14);

/// F |= G as one unsatisfiability run per conclusion.
bool dp_implication(std::span<const Formula> f, std::span<const Formula> g, std::size_t width_cap = 14);

/// Satisfiability and entailment with believes-subformulae as atoms.
class EntailmentOracle {
 public:
  virtual ~EntailmentOracle() = default;
  virtual bool satisfiable(std::span<const Formula> gamma) const = 0;
  bool entails(std::span<const Formula> premises, const Formula& phi) const;
  virtual std::string name() const = 0;
};

enum class OracleKind { Brute, TwDp };

OracleKind oracle_kind_from_name(std::string_view name);
std::unique_ptr<EntailmentOracle> make_oracle(OracleKind kind, const Limits& limits = Limits{});

}  // namespace nmlkit
