#include "nmlkit/random.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "nmlkit/error.hpp"

namespace nmlkit {

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

Formula random_var(Rng& rng, int variables) { return Formula::var("x" + std::to_string(uniform(rng, 1, variables))); }

Formula random_literal(Rng& rng, int variables) {
  Formula v = random_var(rng, variables);
  return coin(rng, 0.5) ? Formula::negation(v) : v;
}

Formula grow(Rng& rng, const FormulaShape& shape, const std::vector<Connective>& ops, int depth) {
  if (depth == 0 || ops.empty() || coin(rng, 0.3)) {
    if (coin(rng, shape.constant_rate)) {
      const bool v = coin(rng, 0.5);
      if (shape.basis.contains(v ? Connective::True : Connective::False)) return Formula::constant(v);
    }
    return random_var(rng, shape.variables);
  }
  const Connective c = ops[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(ops.size()) - 1))];
  std::vector<Formula> kids;
  for (int i = 0; i < arity(c); ++i) kids.push_back(grow(rng, shape, ops, depth - 1));
  return Formula::app(c, std::move(kids));
}

std::vector<Connective> positive_ops(const Basis& b) {
  std::vector<Connective> out;
  for (auto c : b.connectives())
    if (arity(c) > 0) out.push_back(c);
  return out;
}

std::size_t distinct(const std::vector<Formula>& fs) { return subformulae(std::span<const Formula>(fs)).size(); }

template <class Make>
auto retry(Make make) {
  for (int attempt = 0; attempt < 10000; ++attempt)
    if (auto r = make()) return *r;
  throw Error("random generator could not meet its size bound");
}

}  // namespace

Graph random_graph(Rng& rng, int n, double p) {
  Graph g(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (coin(rng, p)) g.add_edge(u, v);
  return g;
}

PseudoCliqueSpec random_pseudo_clique_spec(Rng& rng, int max_n, int max_k) {
  PseudoCliqueSpec s;
  s.n = uniform(rng, 3, max_n);
  s.k = 0;
  for (int i = 0; i < s.n; ++i)
    for (int j = i + 1; j < s.n; ++j) s.lengths[{i, j}] = uniform(rng, 0, max_k);
  return s;
}

Formula random_formula(Rng& rng, const FormulaShape& shape) {
  return grow(rng, shape, positive_ops(shape.basis), shape.max_depth);
}

std::vector<Formula> random_formula_set(Rng& rng, const FormulaShape& shape, int max_formulas, int max_subformulae) {
  return retry([&]() -> std::optional<std::vector<Formula>> {
    std::vector<Formula> out;
    const int count = uniform(rng, 1, max_formulas);
    for (int i = 0; i < count; ++i) out.push_back(random_formula(rng, shape));
    if (distinct(out) > static_cast<std::size_t>(max_subformulae)) return std::nullopt;
    return out;
  });
}

ImplicationInstance random_implication(Rng& rng, const FormulaShape& shape, int max_subformulae) {
  return retry([&]() -> std::optional<ImplicationInstance> {
    ImplicationInstance inst;
    for (int i = uniform(rng, 1, 3); i > 0; --i) inst.premises.push_back(random_formula(rng, shape));
    for (int i = uniform(rng, 1, 2); i > 0; --i) inst.conclusions.push_back(random_formula(rng, shape));
    std::vector<Formula> all = inst.premises;
    all.insert(all.end(), inst.conclusions.begin(), inst.conclusions.end());
    if (distinct(all) > static_cast<std::size_t>(max_subformulae)) return std::nullopt;
    return inst;
  });
}

std::pair<std::vector<Formula>, Formula> random_entailment_query(Rng& rng, const FormulaShape& shape,
                                                                 int max_subformulae) {
  auto inst = random_implication(rng, shape, max_subformulae);
  return {inst.premises, inst.conclusions.front()};
}

DefaultTheory random_literal_default_theory(Rng& rng, int max_defaults, int variables) {
  DefaultTheory t;
  for (int i = uniform(rng, 0, 1); i > 0; --i) t.w.push_back(random_literal(rng, variables));
  for (int i = uniform(rng, 1, max_defaults); i > 0; --i) {
    Formula pre = coin(rng, 0.25) ? Formula::constant(true) : random_literal(rng, variables);
    t.d.push_back({pre, random_literal(rng, variables), random_literal(rng, variables)});
  }
  return t;
}

DefaultTheory random_default_theory(Rng& rng, int max_defaults, int variables) {
  FormulaShape shape;
  shape.variables = variables;
  shape.max_depth = 2;
  DefaultTheory t;
  for (int i = uniform(rng, 0, 2); i > 0; --i) t.w.push_back(random_formula(rng, shape));
  for (int i = uniform(rng, 1, max_defaults); i > 0; --i)
    t.d.push_back({random_formula(rng, shape), random_formula(rng, shape), random_formula(rng, shape)});
  return t;
}

AeTheory random_ae_theory(Rng& rng, int max_beliefs, int max_subformulae, int variables) {
  FormulaShape inner;
  inner.variables = variables;
  inner.max_depth = 1;
  inner.constant_rate = 0.0;
  const auto ops = positive_ops(inner.basis);
  return retry([&]() -> std::optional<AeTheory> {
    std::vector<Formula> pool;
    for (int i = uniform(rng, 0, max_beliefs); i > 0; --i) pool.push_back(Formula::believes(random_formula(rng, inner)));
    std::function<Formula(int)> build = [&](int depth) -> Formula {
      if (depth == 0 || coin(rng, 0.35)) {
        if (!pool.empty() && coin(rng, 0.5)) return pool[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(pool.size()) - 1))];
        return random_var(rng, variables);
      }
      const Connective c = ops[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(ops.size()) - 1))];
      std::vector<Formula> kids;
      for (int i = 0; i < arity(c); ++i) kids.push_back(build(depth - 1));
      return Formula::app(c, std::move(kids));
    };
    AeTheory t;
    for (int i = uniform(rng, 1, 3); i > 0; --i) t.sigma.push_back(build(2));
    if (distinct(t.sigma) > static_cast<std::size_t>(max_subformulae)) return std::nullopt;
    if (belief_subformulae(t.sigma).size() > static_cast<std::size_t>(max_beliefs)) return std::nullopt;
    return t;
  });
}

}  // namespace nmlkit
