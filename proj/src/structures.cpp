#include "nmlkit/structures.hpp"

#include <algorithm>

#include "nmlkit/error.hpp"

namespace nmlkit {

void Vocabulary::add(std::string name, int arity) {
  if (arity < 1 || arity > 2) throw InvalidInput("relation '" + name + "' must be unary or binary");
  if (auto it = index_.find(name); it != index_.end()) {
    if (symbols_[it->second].arity != arity) throw InvalidInput("relation '" + name + "' redeclared");
    return;
  }
  index_.emplace(name, symbols_.size());
  symbols_.push_back({std::move(name), arity});
}

int Vocabulary::arity(const std::string& name) const {
  auto it = index_.find(name);
  if (it == index_.end()) throw InvalidInput("relation '" + name + "' is not in the vocabulary");
  return symbols_[it->second].arity;
}

std::string conn_relation(Connective c, int position) {
  return "conn_" + std::string(connective_name(c)) + "_" + std::to_string(position);
}

std::string const_relation(Connective c) { return "const_" + std::string(connective_name(c)); }

int RelationalStructure::add_element(Element e) {
  const int id = static_cast<int>(elements_.size());
  if (e.formula) by_formula_.emplace(*e.formula, id);
  elements_.push_back(std::move(e));
  return id;
}

void RelationalStructure::add(const std::string& relation, std::vector<int> tuple) {
  if (static_cast<int>(tuple.size()) != vocabulary_.arity(relation))
    throw InvalidInput("tuple of wrong length for relation '" + relation + "'");
  for (int x : tuple)
    if (x < 0 || static_cast<std::size_t>(x) >= elements_.size())
      throw InvalidInput("tuple for '" + relation + "' names an unknown element");
  relations_[relation].insert(std::move(tuple));
}

bool RelationalStructure::holds(const std::string& relation, const std::vector<int>& tuple) const {
  auto it = relations_.find(relation);
  return it != relations_.end() && it->second.count(tuple) != 0;
}

const std::set<std::vector<int>>& RelationalStructure::tuples(const std::string& relation) const {
  static const std::set<std::vector<int>> none;
  auto it = relations_.find(relation);
  return it == relations_.end() ? none : it->second;
}

std::optional<int> RelationalStructure::find(const std::string& description) const {
  for (std::size_t i = 0; i < elements_.size(); ++i)
    if (elements_[i].description == description) return static_cast<int>(i);
  return std::nullopt;
}

std::optional<int> RelationalStructure::find(const Formula& f) const {
  auto it = by_formula_.find(f);
  if (it == by_formula_.end()) return std::nullopt;
  return it->second;
}

RelationalStructure RelationalStructure::permuted(const std::vector<int>& perm) const {
  if (perm.size() != elements_.size()) throw InvalidInput("permutation has the wrong length");
  std::vector<int> inverse(perm.size(), -1);
  for (std::size_t i = 0; i < perm.size(); ++i) {
    const int p = perm[i];
    if (p < 0 || static_cast<std::size_t>(p) >= perm.size() || inverse[static_cast<std::size_t>(p)] >= 0)
      throw InvalidInput("not a permutation");
    inverse[static_cast<std::size_t>(p)] = static_cast<int>(i);
  }
  RelationalStructure out(vocabulary_);
  for (int old : inverse) out.add_element(elements_[static_cast<std::size_t>(old)]);
  for (const auto& [name, ts] : relations_)
    for (const auto& t : ts) {
      std::vector<int> mapped;
      for (int x : t) mapped.push_back(perm[static_cast<std::size_t>(x)]);
      out.add(name, std::move(mapped));
    }
  return out;
}

namespace {

void add_tau_b(Vocabulary& v, const Basis& basis) {
  for (Connective c : basis.connectives()) {
    if (arity(c) == 0) v.add(const_relation(c), 1);
    for (int i = 1; i <= arity(c); ++i) v.add(conn_relation(c, i), 2);
  }
}

Basis with_negation(Basis b) {
  b.insert(Connective::Not);
  return b;
}

// Adds every subformula of `roots` (post-order, shared) with its tau_B facts.
void add_formulas(RelationalStructure& s, const std::vector<Formula>& roots, const Basis& basis, bool believes_ok,
                  bool negate_beliefs) {
  auto add_one = [&](const Formula& f) {
    if (s.find(f)) return;
    const int x = s.add_element({f.to_string(), f, -1});
    switch (f.kind()) {
      case FormulaKind::Var:
        s.add("var", {x});
        break;
      case FormulaKind::Const: {
        const Connective c = f.value() ? Connective::True : Connective::False;
        if (!basis.contains(c))
          throw InvalidInput("constant '" + f.to_string() + "' is not in the basis " + basis.to_string());
        s.add(const_relation(c), {x});
        break;
      }
      case FormulaKind::App: {
        if (!basis.contains(f.op()))
          throw InvalidInput("connective '" + std::string(connective_name(f.op())) + "' is not in the basis " +
                             basis.to_string());
        for (std::size_t i = 0; i < f.children().size(); ++i)
          s.add(conn_relation(f.op(), static_cast<int>(i) + 1), {*s.find(f.child(i)), x});
        break;
      }
      case FormulaKind::Believes:
        if (!believes_ok) throw InvalidInput("'L' is not allowed in propositional formulas");
        s.add("L", {x});
        s.add(kConnL1, {*s.find(f.child(0)), x});
        break;
    }
  };
  for (const Formula& f : subformulae(std::span<const Formula>(roots))) {
    add_one(f);
    if (negate_beliefs && f.kind() == FormulaKind::Believes) add_one(Formula::negation(f));
  }
}

void mark(RelationalStructure& s, const std::string& relation, const std::vector<Formula>& fs) {
  for (const auto& f : fs) s.add(relation, {*s.find(f)});
}

}  // namespace

Vocabulary prop_vocabulary(const Basis& basis) {
  Vocabulary v;
  add_tau_b(v, basis);
  v.add("var", 1);
  v.add("repr", 1);
  return v;
}

Vocabulary imp_vocabulary(const Basis& basis) {
  Vocabulary v = prop_vocabulary(basis);
  v.add("reprPrem", 1);
  v.add("reprConc", 1);
  return v;
}

Vocabulary dl_vocabulary(const Basis& basis) {
  Vocabulary v = prop_vocabulary(with_negation(basis));
  v.add("kb", 1);
  v.add("default", 1);
  v.add("prem", 2);
  v.add("just", 2);
  v.add("concl", 2);
  return v;
}

Vocabulary ae_vocabulary(const Basis& basis) {
  Vocabulary v = prop_vocabulary(with_negation(basis));
  v.add("L", 1);
  v.add(kConnL1, 2);
  return v;
}

RelationalStructure build_prop_structure(const std::vector<Formula>& gamma, const Basis& basis) {
  RelationalStructure s(prop_vocabulary(basis));
  add_formulas(s, gamma, basis, false, false);
  mark(s, "repr", gamma);
  return s;
}

RelationalStructure build_imp_structure(const std::vector<Formula>& f, const std::vector<Formula>& g,
                                        const Basis& basis) {
  RelationalStructure s(imp_vocabulary(basis));
  std::vector<Formula> all = f;
  all.insert(all.end(), g.begin(), g.end());
  add_formulas(s, all, basis, false, false);
  mark(s, "repr", all);
  mark(s, "reprPrem", f);
  mark(s, "reprConc", g);
  return s;
}

RelationalStructure build_dl_structure(const DefaultTheory& theory, const Basis& basis_in) {
  const Basis basis = with_negation(basis_in);
  RelationalStructure s(dl_vocabulary(basis));
  std::vector<Formula> roots = theory.w;
  for (const auto& r : theory.d) {
    roots.push_back(r.prerequisite);
    roots.push_back(r.justification);
    roots.push_back(Formula::negation(r.justification));
    roots.push_back(r.conclusion);
  }
  add_formulas(s, roots, basis, false, false);
  mark(s, "repr", roots);
  mark(s, "kb", theory.w);
  for (std::size_t i = 0; i < theory.d.size(); ++i) {
    const auto& r = theory.d[i];
    const int d = s.add_element({"d" + std::to_string(i + 1), std::nullopt, static_cast<int>(i)});
    s.add("default", {d});
    s.add("prem", {*s.find(r.prerequisite), d});
    s.add("just", {*s.find(r.justification), d});
    s.add("concl", {*s.find(r.conclusion), d});
  }
  return s;
}

RelationalStructure build_ael_structure(const AeTheory& sigma, const Basis& basis_in) {
  const Basis basis = with_negation(basis_in);
  RelationalStructure s(ae_vocabulary(basis));
  add_formulas(s, sigma.sigma, basis, true, true);
  mark(s, "repr", sigma.sigma);
  return s;
}

Graph gaifman_graph(const RelationalStructure& s) {
  Graph g(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) g.set_label(static_cast<int>(i), VertexLabel::None, s.element(static_cast<int>(i)).description);
  for (const auto& [name, ts] : s.relations())
    for (const auto& t : ts)
      for (std::size_t a = 0; a < t.size(); ++a)
        for (std::size_t b = a + 1; b < t.size(); ++b)
          if (t[a] != t[b]) g.add_edge(t[a], t[b]);
  return g;
}

}  // namespace nmlkit
