#pragma once
// Reference implementations used only by the tests. They share no code with
// the library beyond the Formula accessors and plain data types.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "nmlkit/formula.hpp"
#include "nmlkit/graph.hpp"
#include "nmlkit/theory.hpp"

namespace oracle {

using nmlkit::Connective;
using nmlkit::Formula;
using nmlkit::FormulaKind;

using AtomValue = std::function<bool(const Formula&)>;

// Truth tables written out by hand.
inline bool eval(const Formula& f, const AtomValue& atom) {
  switch (f.kind()) {
    case FormulaKind::Var:
    case FormulaKind::Believes: return atom(f);
    case FormulaKind::Const: return f.value();
    case FormulaKind::App: break;
  }
  std::vector<bool> v;
  for (const auto& c : f.children()) v.push_back(eval(c, atom));
  switch (f.op()) {
    case Connective::Not: return !v[0];
    case Connective::And: return v[0] && v[1];
    case Connective::Or: return v[0] || v[1];
    case Connective::Imp: return !v[0] || v[1];
    case Connective::Iff: return v[0] == v[1];
    case Connective::Xor: return v[0] != v[1];
    case Connective::Xor3: return (v[0] + v[1] + v[2]) % 2 == 1;
    case Connective::True: return true;
    case Connective::False: return false;
  }
  return false;
}

inline void collect_vars(const Formula& f, std::set<std::string>& out) {
  if (f.kind() == FormulaKind::Var) out.insert(f.name());
  for (const auto& c : f.children()) collect_vars(c, out);
}

// Variables only; believes-subformulas are resolved by `beliefs`.
struct Space {
  std::vector<std::string> vars;
  std::size_t size() const { return std::size_t{1} << vars.size(); }
  bool value(std::size_t row, const std::string& v) const {
    const auto i = static_cast<std::size_t>(std::find(vars.begin(), vars.end(), v) - vars.begin());
    return (row >> i & 1u) != 0;
  }
};

inline Space space_of(const std::vector<Formula>& fs) {
  std::set<std::string> vs;
  for (const auto& f : fs) collect_vars(f, vs);
  return {{vs.begin(), vs.end()}};
}

using Models = std::vector<bool>;

// Rows of `sp` satisfying f, with believes-subformulas read from `beliefs`
// (unset beliefs make evaluation throw).
inline Models models(const Formula& f, const Space& sp, const std::map<Formula, bool>& beliefs = {}) {
  Models m(sp.size());
  for (std::size_t row = 0; row < sp.size(); ++row)
    m[row] = eval(f, [&](const Formula& a) {
      if (a.kind() == FormulaKind::Var) return sp.value(row, a.name());
      return beliefs.at(a);
    });
  return m;
}

inline Models all_rows(const Space& sp) { return Models(sp.size(), true); }

inline Models meet(Models a, const Models& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = a[i] && b[i];
  return a;
}

inline bool subset(const Models& a, const Models& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && !b[i]) return false;
  return true;
}

inline bool any(const Models& a) { return std::find(a.begin(), a.end(), true) != a.end(); }

inline bool satisfiable(const std::vector<Formula>& gamma) {
  const Space sp = space_of(gamma);
  Models m = all_rows(sp);
  for (const auto& f : gamma) m = meet(m, models(f, sp));
  return any(m);
}

inline bool implies(const std::vector<Formula>& f, const std::vector<Formula>& g) {
  std::vector<Formula> all = f;
  all.insert(all.end(), g.begin(), g.end());
  const Space sp = space_of(all);
  Models m = all_rows(sp);
  for (const auto& x : f) m = meet(m, models(x, sp));
  for (const auto& y : g)
    if (!subset(m, models(y, sp))) return false;
  return true;
}

// Reiter: E is an extension iff E is the least theory containing W and
// closed under the defaults whose justification is consistent with E.
// Theories are model sets; candidates are W plus the conclusions of any
// subset of D. Returns the distinct extensions' model sets.
inline std::vector<Models> default_extensions(const nmlkit::DefaultTheory& t) {
  std::vector<Formula> all = t.w;
  for (const auto& r : t.d) all.insert(all.end(), {r.prerequisite, r.justification, r.conclusion});
  const Space sp = space_of(all);
  Models mw = all_rows(sp);
  for (const auto& w : t.w) mw = meet(mw, models(w, sp));
  std::vector<Models> pre, just, concl;
  for (const auto& r : t.d) {
    pre.push_back(models(r.prerequisite, sp));
    just.push_back(models(r.justification, sp));
    concl.push_back(models(r.conclusion, sp));
  }
  std::set<Models> found;
  const std::size_t m = t.d.size();
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << m); ++bits) {
    Models e = mw;
    for (std::size_t i = 0; i < m; ++i)
      if (bits >> i & 1u) e = meet(e, concl[i]);
    // Gamma(E): least fixpoint from Th(W).
    Models g = mw;
    std::vector<bool> used(m, false);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < m; ++i) {
        if (used[i]) continue;
        const bool justified = any(meet(e, just[i]));  // not-beta is not in E
        if (justified && subset(g, pre[i])) {
          g = meet(g, concl[i]);
          used[i] = true;
          changed = true;
        }
      }
    }
    if (g == e) found.insert(e);
  }
  return {found.begin(), found.end()};
}

inline Models theory_models(const nmlkit::DefaultTheory& t, const std::vector<int>& generating) {
  std::vector<Formula> all = t.w;
  for (const auto& r : t.d) all.insert(all.end(), {r.prerequisite, r.justification, r.conclusion});
  const Space sp = space_of(all);
  Models e = all_rows(sp);
  for (const auto& w : t.w) e = meet(e, models(w, sp));
  for (int i : generating) e = meet(e, models(t.d[static_cast<std::size_t>(i)].conclusion, sp));
  return e;
}

inline void collect_beliefs(const Formula& f, std::set<Formula>& out) {
  if (f.kind() == FormulaKind::Believes) out.insert(f);
  for (const auto& c : f.children()) collect_beliefs(c, out);
}

// Belief states: a guess fixes the truth of every L(phi); the guess is stable
// when the objective theory obtained by substituting it entails exactly the
// guessed-true phi. Returns each stable guess as the set of believed formulas.
inline std::vector<std::set<Formula>> ae_belief_states(const nmlkit::AeTheory& t) {
  std::set<Formula> bs;
  for (const auto& f : t.sigma) collect_beliefs(f, bs);
  const std::vector<Formula> beliefs(bs.begin(), bs.end());
  std::vector<Formula> all = t.sigma;
  for (const auto& b : beliefs) all.push_back(b.child(0));
  const Space sp = space_of(all);
  std::vector<std::set<Formula>> out;
  for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << beliefs.size()); ++bits) {
    std::map<Formula, bool> guess;
    for (std::size_t i = 0; i < beliefs.size(); ++i) guess[beliefs[i]] = (bits >> i & 1u) != 0;
    Models m = all_rows(sp);
    for (const auto& f : t.sigma) m = meet(m, models(f, sp, guess));
    bool stable = true;
    for (const auto& b : beliefs)
      if (subset(m, models(b.child(0), sp, guess)) != guess[b]) stable = false;
    if (!stable) continue;
    std::set<Formula> believed;
    for (const auto& b : beliefs)
      if (guess[b]) believed.insert(b);
    out.push_back(believed);
  }
  return out;
}

// Treewidth by the subset recurrence TW(S) = min over v in S of
// max(TW(S - v), |Q(S - v, v)|), where Q(S, v) are the vertices outside
// S + v reachable from v through S. Fine up to ~16 vertices.
inline int treewidth(const nmlkit::Graph& g) {
  const int n = static_cast<int>(g.size());
  if (n == 0) return -1;
  std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v)
    for (int u : g.neighbors(v)) adj[static_cast<std::size_t>(v)] |= 1u << u;
  auto q = [&](std::uint32_t s, int v) {
    std::uint32_t seen = 1u << v, frontier = 1u << v, out = 0;
    while (frontier) {
      const int x = __builtin_ctz(frontier);
      frontier &= frontier - 1;
      const std::uint32_t nb = adj[static_cast<std::size_t>(x)] & ~seen;
      seen |= nb;
      frontier |= nb & s;
      out |= nb & ~s;
    }
    return __builtin_popcount(out);
  };
  const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
  std::vector<int> tw(std::size_t{1} << n, 0);
  tw[0] = -1;
  for (std::uint32_t s = 1; s <= full; ++s) {
    int best = n;
    for (std::uint32_t rest = s; rest; rest &= rest - 1) {
      const int v = __builtin_ctz(rest);
      const std::uint32_t without = s & ~(1u << v);
      best = std::min(best, std::max(tw[without], q(without, v)));
    }
    tw[s] = best;
  }
  return tw[full];
}

}  // namespace oracle
