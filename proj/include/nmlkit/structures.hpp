#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "nmlkit/formula.hpp"
#include "nmlkit/graph.hpp"
#include "nmlkit/theory.hpp"

namespace nmlkit {

struct RelationSymbol {
  std::string name;
  int arity;

  friend bool operator==(const RelationSymbol&, const RelationSymbol&) = default;
};

/// Ordered list of relation symbols with unique names.
class Vocabulary {
 public:
  void add(std::string name, int arity);
  bool contains(const std::string& name) const { return index_.count(name) != 0; }
  /// Arity of `name`; throws InvalidInput when absent.
  int arity(const std::string& name) const;
  const std::vector<RelationSymbol>& symbols() const noexcept { return symbols_; }

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) { return a.symbols_ == b.symbols_; }

 private:
  std::vector<RelationSymbol> symbols_;
  std::map<std::string, std::size_t> index_;
};

// Relation names used by the builders.
std::string conn_relation(Connective c, int position);  // "conn_and_1"
std::string const_relation(Connective c);               // "const_true"
inline const std::string kConnL1 = "conn_L_1";

/// Universe element: a formula, a default rule, or neither.
struct Element {
  std::string description;
  std::optional<Formula> formula;
  int default_index = -1;  // 0-based rule index for default elements
};

/// Finite structure over elements 0..size()-1.
class RelationalStructure {
 public:
  explicit RelationalStructure(Vocabulary v = {}) : vocabulary_(std::move(v)) {}

  const Vocabulary& vocabulary() const noexcept { return vocabulary_; }
  std::size_t size() const noexcept { return elements_.size(); }
  const Element& element(int id) const { return elements_.at(static_cast<std::size_t>(id)); }
  const std::vector<Element>& elements() const noexcept { return elements_; }

  int add_element(Element e);
  /// Adds a tuple; checks arity and element range.
  void add(const std::string& relation, std::vector<int> tuple);
  bool holds(const std::string& relation, const std::vector<int>& tuple) const;
  /// Tuples of `relation` in lexicographic order (empty when the symbol is unused).
  const std::set<std::vector<int>>& tuples(const std::string& relation) const;
  const std::map<std::string, std::set<std::vector<int>>>& relations() const noexcept { return relations_; }

  /// Element whose description is `description`, if any.
  std::optional<int> find(const std::string& description) const;
  std::optional<int> find(const Formula& f) const;

  /// Same structure with element i moved to position perm[i].
  RelationalStructure permuted(const std::vector<int>& perm) const;

 private:
  Vocabulary vocabulary_;
  std::vector<Element> elements_;
  std::map<std::string, std::set<std::vector<int>>> relations_;
  std::map<Formula, int> by_formula_;
};

/// tau_B plus var and repr, with conn_<f>_<i> for every connective of
/// positive arity and const_<f> for the nullary ones.
Vocabulary prop_vocabulary(const Basis& basis);
Vocabulary imp_vocabulary(const Basis& basis);
Vocabulary dl_vocabulary(const Basis& basis);
Vocabulary ae_vocabulary(const Basis& basis);

/// Universe = subformulae of gamma (shared); repr marks the members of gamma.
RelationalStructure build_prop_structure(const std::vector<Formula>& gamma, const Basis& basis);
/// As above over F and G, with reprPrem / reprConc marking each side.
RelationalStructure build_imp_structure(const std::vector<Formula>& f, const std::vector<Formula>& g,
                                        const Basis& basis);
/// Formula elements for W, each alpha, beta, gamma and not-beta, then one
/// element per default (d1, d2, ...). repr marks W and every rule part
/// including not-beta. The negation connective is always part of the vocabulary.
RelationalStructure build_dl_structure(const DefaultTheory& theory, const Basis& basis);
/// Subformulae of sigma with not-L(phi) inserted right after each L(phi).
/// L marks believes elements, conn_L_1 links phi to L(phi). Negation is
/// always part of the vocabulary.
RelationalStructure build_ael_structure(const AeTheory& sigma, const Basis& basis);

/// One vertex per element in universe order; an edge for every pair of
/// distinct elements sharing a tuple. Vertex descriptions are element descriptions.
Graph gaifman_graph(const RelationalStructure& s);

}  // namespace nmlkit
