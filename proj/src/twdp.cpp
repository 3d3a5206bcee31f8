#include "nmlkit/twdp.hpp"

#include <algorithm>
#include <unordered_map>

#include "nmlkit/error.hpp"

namespace nmlkit {

std::vector<int> Constraint::scope() const {
  std::vector<int> s = arguments;
  s.push_back(element);
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

ConstraintGraph constraint_graph(std::span<const Formula> gamma) {
  ConstraintGraph cg;
  std::unordered_map<Formula, int, FormulaHash> id;
  // post-order, believes nodes stay opaque
  std::vector<std::pair<Formula, bool>> stack;
  for (auto it = gamma.rbegin(); it != gamma.rend(); ++it) stack.emplace_back(*it, false);
  while (!stack.empty()) {
    auto [f, expanded] = stack.back();
    stack.pop_back();
    if (id.count(f)) continue;
    if (!expanded && f.kind() == FormulaKind::App) {
      stack.emplace_back(f, true);
      for (auto c = f.children().rbegin(); c != f.children().rend(); ++c)
        if (!id.count(*c)) stack.emplace_back(*c, false);
      continue;
    }
    id.emplace(f, static_cast<int>(cg.elements.size()));
    cg.elements.push_back(f);
  }
  cg.graph = Graph(cg.elements.size());
  for (std::size_t x = 0; x < cg.elements.size(); ++x) {
    const Formula& f = cg.elements[x];
    if (f.kind() == FormulaKind::Const) {
      cg.constraints.push_back({Constraint::Kind::Unit, static_cast<int>(x), {}, Connective::True, f.value()});
    } else if (f.kind() == FormulaKind::App) {
      Constraint c{Constraint::Kind::Node, static_cast<int>(x), {}, f.op(), true};
      for (const auto& ch : f.children()) c.arguments.push_back(id.at(ch));
      const auto scope = c.scope();
      for (std::size_t a = 0; a < scope.size(); ++a)
        for (std::size_t b = a + 1; b < scope.size(); ++b) cg.graph.add_edge(scope[a], scope[b]);
      cg.constraints.push_back(std::move(c));
    }
  }
  for (const auto& f : gamma)
    cg.constraints.push_back({Constraint::Kind::Unit, id.at(f), {}, Connective::True, true});
  return cg;
}

namespace {

using Table = std::vector<std::uint8_t>;

int position(const std::vector<int>& bag, int v) {
  return static_cast<int>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
}

bool check(const Constraint& c, const std::vector<int>& bag, std::uint32_t labeling) {
  auto val = [&](int v) { return (labeling >> position(bag, v) & 1u) != 0; };
  if (c.kind == Constraint::Kind::Unit) return val(c.element) == c.value;
  bool args[3] = {false, false, false};
  for (std::size_t i = 0; i < c.arguments.size(); ++i) args[i] = val(c.arguments[i]);
  return val(c.element) == apply_connective(c.op, std::span<const bool>(args, c.arguments.size()));
}

// Inserts bit `b` at position p.
std::uint32_t widen(std::uint32_t x, int p, std::uint32_t b) {
  const std::uint32_t low = x & ((1u << p) - 1);
  return ((x >> p) << (p + 1)) | (b << p) | low;
}

std::uint32_t narrow(std::uint32_t x, int p) {
  const std::uint32_t low = x & ((1u << p) - 1);
  return ((x >> (p + 1)) << p) | low;
}

}  // namespace

DpRun dp_sat_run(std::span<const Formula> gamma, const TreeDecomposition* td_in, std::size_t width_cap) {
  const ConstraintGraph cg = constraint_graph(gamma);
  DpRun run;
  TreeDecomposition td;
  if (td_in) {
    if (auto v = validate_decomposition(cg.graph, *td_in); !v.empty())
      throw InvalidInput("supplied decomposition does not fit the constraint graph: " + v.front().message);
    td = *td_in;
  } else {
    td = heuristic_decomposition(cg.graph, Heuristic::MinFill);
  }
  run.width = width(td);
  if (run.width > static_cast<int>(width_cap) || run.width > 24)
    throw ResourceLimit("treewidth DP: decomposition width " + std::to_string(run.width) + " exceeds the cap of " +
                        std::to_string(width_cap));
  const NiceDecomposition nice = make_nice(td);
  run.nice_nodes = nice.nodes.size();

  // Each constraint goes to the first node whose bag covers its scope.
  std::vector<std::vector<int>> nodes_with(cg.elements.size());
  for (std::size_t t = 0; t < nice.nodes.size(); ++t)
    for (int v : nice.nodes[t].bag) nodes_with[static_cast<std::size_t>(v)].push_back(static_cast<int>(t));
  std::vector<std::vector<int>> assigned(nice.nodes.size());
  for (std::size_t ci = 0; ci < cg.constraints.size(); ++ci) {
    const auto scope = cg.constraints[ci].scope();
    int home = -1;
    for (int t : nodes_with[static_cast<std::size_t>(scope.front())]) {
      const auto& bag = nice.nodes[static_cast<std::size_t>(t)].bag;
      if (std::includes(bag.begin(), bag.end(), scope.begin(), scope.end())) {
        home = t;
        break;
      }
    }
    if (home < 0) throw Error("treewidth DP: constraint scope not covered by any bag");
    assigned[static_cast<std::size_t>(home)].push_back(static_cast<int>(ci));
  }

  std::vector<Table> tables(nice.nodes.size());
  for (std::size_t t = 0; t < nice.nodes.size(); ++t) {
    const NiceNode& node = nice.nodes[t];
    const std::uint32_t size = 1u << node.bag.size();
    Table table(size, 0);
    switch (node.kind) {
      case NiceKind::Leaf:
        std::fill(table.begin(), table.end(), 1);
        break;
      case NiceKind::Introduce: {
        const Table& child = tables[static_cast<std::size_t>(node.children[0])];
        const int p = position(node.bag, node.vertex);
        for (std::uint32_t b = 0; b < size; ++b) table[b] = child[narrow(b, p)];
        break;
      }
      case NiceKind::Forget: {
        const NiceNode& cn = nice.nodes[static_cast<std::size_t>(node.children[0])];
        const Table& child = tables[static_cast<std::size_t>(node.children[0])];
        const int p = position(cn.bag, node.vertex);
        for (std::uint32_t b = 0; b < size; ++b) table[b] = child[widen(b, p, 0)] | child[widen(b, p, 1)];
        break;
      }
      case NiceKind::Join: {
        const Table& l = tables[static_cast<std::size_t>(node.children[0])];
        const Table& r = tables[static_cast<std::size_t>(node.children[1])];
        for (std::uint32_t b = 0; b < size; ++b) table[b] = l[b] & r[b];
        break;
      }
    }
    for (int c : node.children) Table().swap(tables[static_cast<std::size_t>(c)]);
    bool any = false;
    for (std::uint32_t b = 0; b < size; ++b) {
      if (!table[b]) continue;
      for (int ci : assigned[t])
        if (!check(cg.constraints[static_cast<std::size_t>(ci)], node.bag, b)) {
          table[b] = 0;
          break;
        }
      any = any || table[b];
    }
    if (!any) return run;
    tables[t] = std::move(table);
  }
  run.satisfiable = true;
  return run;
}

bool dp_sat(std::span<const Formula> gamma, const TreeDecomposition* td, std::size_t width_cap) {
  return dp_sat_run(gamma, td, width_cap).satisfiable;
}

bool dp_implication(std::span<const Formula> f, std::span<const Formula> g, std::size_t width_cap) {
  std::vector<Formula> query(f.begin(), f.end());
  query.push_back(Formula::constant(true));
  for (const auto& gi : g) {
    query.back() = Formula::negation(gi);
    if (dp_sat(query, nullptr, width_cap)) return false;
  }
  return true;
}

bool EntailmentOracle::entails(std::span<const Formula> premises, const Formula& phi) const {
  std::vector<Formula> query(premises.begin(), premises.end());
  query.push_back(Formula::negation(phi));
  return !satisfiable(query);
}

namespace {

class BruteOracle : public EntailmentOracle {
 public:
  explicit BruteOracle(std::size_t cap) : cap_(cap) {}
  bool satisfiable(std::span<const Formula> gamma) const override { return sat_bruteforce(gamma, cap_).has_value(); }
  std::string name() const override { return "brute"; }

 private:
  std::size_t cap_;
};

class TwDpOracle : public EntailmentOracle {
 public:
  explicit TwDpOracle(std::size_t cap) : cap_(cap) {}
  bool satisfiable(std::span<const Formula> gamma) const override { return dp_sat(gamma, nullptr, cap_); }
  std::string name() const override { return "twdp"; }

 private:
  std::size_t cap_;
};

}  // namespace

OracleKind oracle_kind_from_name(std::string_view name) {
  if (name == "brute") return OracleKind::Brute;
  if (name == "twdp") return OracleKind::TwDp;
  throw InvalidInput("unknown oracle '" + std::string(name) + "' (expected brute or twdp)");
}

std::unique_ptr<EntailmentOracle> make_oracle(OracleKind kind, const Limits& limits) {
  if (kind == OracleKind::Brute) return std::make_unique<BruteOracle>(limits.sat_atoms);
  return std::make_unique<TwDpOracle>(limits.dp_width);
}

}  // namespace nmlkit
