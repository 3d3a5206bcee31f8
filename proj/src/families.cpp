#include "nmlkit/families.hpp"

#include <functional>

#include "nmlkit/error.hpp"

namespace nmlkit {

namespace {

Formula x(int i) { return Formula::var("x" + std::to_string(i)); }
Formula y(int i) { return Formula::var("y" + std::to_string(i)); }

bool is_var(const Formula& f) { return f.kind() == FormulaKind::Var; }
bool is_const(const Formula& f) { return f.kind() == FormulaKind::Const; }
bool is_op(const Formula& f, Connective c) { return f.kind() == FormulaKind::App && f.op() == c; }
bool is_literal(const Formula& f) { return is_var(f) || (is_op(f, Connective::Not) && is_var(f.child(0))); }

// Leaves of a maximal tree of `c` nodes rooted at f.
void flatten(const Formula& f, Connective c, std::vector<Formula>& out) {
  if (is_op(f, c)) {
    for (const auto& ch : f.children()) flatten(ch, c, out);
  } else {
    out.push_back(f);
  }
}

bool all_of_flat(const Formula& f, Connective c, const std::function<bool(const Formula&)>& leaf) {
  std::vector<Formula> leaves;
  flatten(f, c, leaves);
  for (const auto& l : leaves)
    if (!leaf(l)) return false;
  return true;
}

bool monotone_clause(const Formula& f) {
  std::vector<Formula> leaves;
  flatten(f, Connective::Or, leaves);
  if (leaves.size() > 2) return false;
  for (const auto& l : leaves)
    if (!is_var(l)) return false;
  return true;
}

bool monotone_2cnf(const Formula& f) { return all_of_flat(f, Connective::And, monotone_clause); }

bool dnf(const Formula& f) {
  return all_of_flat(f, Connective::Or, [](const Formula& term) {
    return all_of_flat(term, Connective::And, [](const Formula& l) { return is_literal(l) || is_const(l); });
  });
}

bool xor3_only(const Formula& f) {
  if (is_var(f)) return true;
  if (!is_op(f, Connective::Xor3)) return false;
  for (const auto& c : f.children())
    if (!xor3_only(c)) return false;
  return true;
}

ClassCheck fail(std::string why) { return {false, std::move(why)}; }

template <class T>
const T& expect(const Instance& inst, std::string_view cls) {
  if (const T* p = std::get_if<T>(&inst)) return *p;
  throw InvalidInput("class " + std::string(cls) + " does not apply to this kind of instance");
}

}  // namespace

int PseudoCliqueSpec::length(int i, int j) const {
  if (i > j) std::swap(i, j);
  auto it = lengths.find({i, j});
  return it == lengths.end() ? k : it->second;
}

void PseudoCliqueSpec::validate() const {
  if (n < 2) throw InvalidInput("pseudo-clique needs at least two main vertices");
  if (k < 0) throw InvalidInput("pseudo-clique cardinality must be non-negative");
  for (const auto& [p, len] : lengths) {
    if (p.first < 0 || p.first >= p.second || p.second >= n)
      throw InvalidInput("pseudo-clique length given for an invalid pair");
    if (len < 0) throw InvalidInput("pseudo-clique path length must be non-negative");
  }
}

Graph gen_pseudo_clique(const PseudoCliqueSpec& spec) {
  spec.validate();
  std::size_t total = static_cast<std::size_t>(spec.n);
  for (int i = 0; i < spec.n; ++i)
    for (int j = i + 1; j < spec.n; ++j) total += static_cast<std::size_t>(spec.length(i, j));
  Graph g(total);
  for (int i = 0; i < spec.n; ++i) g.set_label(i, VertexLabel::Main, std::to_string(i + 1));
  int next = spec.n;
  for (int i = 0; i < spec.n; ++i) {
    for (int j = i + 1; j < spec.n; ++j) {
      int prev = i;
      for (int r = 1; r <= spec.length(i, j); ++r) {
        g.set_label(next, VertexLabel::Edge,
                    "d" + std::to_string(i + 1) + "_" + std::to_string(j + 1) + "^" + std::to_string(r));
        g.add_edge(prev, next);
        prev = next++;
      }
      g.add_edge(prev, j);
    }
  }
  return g;
}

Graph gen_pseudo_clique(int n, int k) {
  PseudoCliqueSpec spec;
  spec.n = n;
  spec.k = k;
  return gen_pseudo_clique(spec);
}

DlLowerVariant dl_lower_variant_from_name(std::string_view name) {
  if (name == "printed") return DlLowerVariant::Printed;
  if (name == "symmetric") return DlLowerVariant::Symmetric;
  throw InvalidInput("unknown variant '" + std::string(name) + "' (printed|symmetric)");
}

DefaultTheory gen_dl_lower(int n, DlLowerVariant variant) {
  if (n < 1) throw InvalidInput("dl-lower needs n >= 1");
  DefaultTheory t;
  for (int i = 1; i <= n; ++i) {
    if (variant == DlLowerVariant::Printed) {
      for (int j = i; j <= n; ++j) t.d.push_back({x(i), y(j), Formula::constant(false)});
    } else {
      for (int j = i + 1; j <= n; ++j) t.d.push_back({x(i), x(j), Formula::constant(false)});
    }
  }
  return t;
}

AeTheory gen_ael_lower(int k) {
  if (k < 1) throw InvalidInput("ael-lower needs k >= 1");
  AeTheory t;
  for (int i = 1; i <= k; ++i)
    for (int j = i; j <= k; ++j) t.sigma.push_back(Formula::disj(x(i), x(j)));
  return t;
}

ImpLowerKind imp_lower_kind_from_name(std::string_view name) {
  if (name == "xor3") return ImpLowerKind::Xor3;
  if (name == "cnf_dnf") return ImpLowerKind::CnfDnf;
  throw InvalidInput("unknown kind '" + std::string(name) + "' (xor3|cnf_dnf)");
}

ImplicationInstance gen_imp_lower(ImpLowerKind kind, int n) {
  if (n < 2) throw InvalidInput("imp-lower needs n >= 2");
  ImplicationInstance inst;
  if (kind == ImpLowerKind::Xor3) {
    for (int i = 1; i + 2 <= n; ++i) inst.premises.push_back(Formula::app(Connective::Xor3, {x(i), x(i + 1), x(i + 2)}));
    inst.conclusions.push_back(Formula::app(Connective::Xor3, {x(1), x(2), x(n)}));
  } else {
    for (int i = 1; i <= n; ++i)
      for (int j = i; j <= n; ++j) inst.premises.push_back(Formula::disj(x(i), x(j)));
    Formula g = Formula::conj(x(1), x(2));
    for (int i = 2; i < n; ++i) g = Formula::disj(g, Formula::conj(x(i), x(i + 1)));
    inst.conclusions.push_back(g);
  }
  return inst;
}

std::vector<Formula> gen_chain(int m) {
  if (m < 1) throw InvalidInput("chain needs m >= 1");
  std::vector<Formula> out{x(1)};
  for (int i = 1; i < m; ++i) out.push_back(Formula::implies(x(i), x(i + 1)));
  return out;
}

std::vector<std::string> class_names() {
  return {"dl_literals", "dl_propositions", "ael_disjunctions", "imp_xor3", "imp_cnf_dnf"};
}

ClassCheck check_class(const Instance& instance, std::string_view cls) {
  // Variant index each class applies to.
  static const std::map<std::string_view, std::size_t> kind{
      {"dl_literals", 0}, {"dl_propositions", 0}, {"ael_disjunctions", 1}, {"imp_xor3", 2}, {"imp_cnf_dnf", 2}};
  const auto k = kind.find(cls);
  if (k == kind.end()) throw InvalidInput("unknown class '" + std::string(cls) + "'");
  if (k->second != instance.index()) return fail("class " + std::string(cls) + " does not apply to this kind of instance");
  if (cls == "dl_literals") {
    const auto& t = expect<DefaultTheory>(instance, cls);
    if (!t.w.empty()) return fail("W is not empty");
    for (const auto& r : t.d)
      for (const auto* part : {&r.prerequisite, &r.justification, &r.conclusion})
        if (!is_literal(*part) && !is_const(*part)) return fail("rule part '" + part->to_string() + "' is not a literal");
    return {true, {}};
  }
  if (cls == "dl_propositions") {
    const auto& t = expect<DefaultTheory>(instance, cls);
    if (t.w.size() > 1) return fail("W has more than one formula");
    if (t.w.size() == 1 && !is_var(t.w[0])) return fail("W is not a proposition");
    for (const auto& r : t.d)
      for (const auto* part : {&r.prerequisite, &r.justification, &r.conclusion})
        if (!is_var(*part) && !(is_const(*part) && !part->value()))
          return fail("rule part '" + part->to_string() + "' is neither a proposition nor false");
    return {true, {}};
  }
  if (cls == "ael_disjunctions") {
    const auto& t = expect<AeTheory>(instance, cls);
    for (const auto& f : t.sigma) {
      const bool ok = all_of_flat(f, Connective::Or, [](const Formula& l) {
        return is_var(l) || (l.kind() == FormulaKind::Believes && is_var(l.child(0)));
      });
      if (!ok) return fail("'" + f.to_string() + "' is not a disjunction of (believed) propositions");
    }
    return {true, {}};
  }
  if (cls == "imp_xor3") {
    const auto& t = expect<ImplicationInstance>(instance, cls);
    for (const auto* side : {&t.premises, &t.conclusions})
      for (const auto& f : *side)
        if (!xor3_only(f)) return fail("'" + f.to_string() + "' uses more than X3");
    return {true, {}};
  }
  if (cls == "imp_cnf_dnf") {
    const auto& t = expect<ImplicationInstance>(instance, cls);
    for (const auto& f : t.premises)
      if (!monotone_2cnf(f)) return fail("premise '" + f.to_string() + "' is not monotone 2-CNF");
    for (const auto& f : t.conclusions)
      if (!dnf(f)) return fail("conclusion '" + f.to_string() + "' is not in DNF");
    return {true, {}};
  }
  throw InvalidInput("unknown class '" + std::string(cls) + "'");
}

}  // namespace nmlkit
