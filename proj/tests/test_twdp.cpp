#include <catch_amalgamated.hpp>

#include <chrono>

#include "nmlkit/error.hpp"
#include "nmlkit/families.hpp"
#include "nmlkit/random.hpp"
#include "nmlkit/treewidth.hpp"
#include "nmlkit/twdp.hpp"
#include "oracles.hpp"

using namespace nmlkit;

namespace {
Formula P(const char* s) { return parse_formula(s, FormulaMode::Propositional); }
Formula A(const char* s) { return parse_formula(s, FormulaMode::Autoepistemic); }
}  // namespace

TEST_CASE("constraint graph puts every scope in one clique", "[twdp]") {
  const std::vector<Formula> gamma{P("p & !q"), P("q | p")};
  const auto cg = constraint_graph(gamma);
  CHECK(cg.elements.size() == 5);
  for (const auto& c : cg.constraints) {
    const auto s = c.scope();
    for (std::size_t i = 0; i < s.size(); ++i)
      for (std::size_t j = i + 1; j < s.size(); ++j) CHECK(cg.graph.has_edge(s[i], s[j]));
  }
  int units = 0;
  for (const auto& c : cg.constraints) units += c.kind == Constraint::Kind::Unit;
  CHECK(units == 2);
}

TEST_CASE("dp_sat examples", "[twdp]") {
  const auto chain = gen_chain(50);
  const auto run = dp_sat_run(chain);
  CHECK(run.satisfiable);
  CHECK(run.width <= 3);
  CHECK(dp_sat(gen_chain(10)) == sat_bruteforce(gen_chain(10)).has_value());
  CHECK_FALSE(dp_sat(std::vector<Formula>{P("p & !p")}));
  CHECK(dp_sat(std::vector<Formula>{}));
  CHECK_FALSE(dp_sat(std::vector<Formula>{P("F")}));
  CHECK(dp_sat(std::vector<Formula>{P("X3(a, b, c)"), P("a <-> b"), P("c ^ a")}) ==
        oracle::satisfiable({P("X3(a, b, c)"), P("a <-> b"), P("c ^ a")}));
}

TEST_CASE("dp_sat treats believes atoms opaquely", "[twdp]") {
  CHECK(dp_sat(std::vector<Formula>{A("L p"), A("!p")}));
  CHECK_FALSE(dp_sat(std::vector<Formula>{A("L p"), A("!L p")}));
}

TEST_CASE("dp_sat width cap", "[twdp]") {
  std::vector<Formula> clauses;
  for (int i = 1; i <= 9; ++i)
    for (int j = i + 1; j <= 9; ++j)
      clauses.push_back(Formula::disj(Formula::var("x" + std::to_string(i)), Formula::var("x" + std::to_string(j))));
  CHECK_THROWS_AS(dp_sat(clauses, nullptr, 3), ResourceLimit);
  CHECK(dp_sat(clauses));
}

TEST_CASE("dp_sat rejects a decomposition of another graph", "[twdp]") {
  const std::vector<Formula> gamma{P("p & q")};
  TreeDecomposition td;
  td.add_bag({0, 1});
  td.add_bag({2});
  CHECK_THROWS_AS(dp_sat(gamma, &td), InvalidInput);
}

TEST_CASE("dp_sat agrees with brute force", "[twdp][property]") {
  Rng rng(41);
  FormulaShape shape;
  shape.variables = 4;
  shape.basis = Basis{Connective::Not, Connective::And, Connective::Or, Connective::Imp, Connective::Iff,
                      Connective::Xor, Connective::Xor3, Connective::True, Connective::False};
  for (int t = 0; t < 500; ++t) {
    const auto gamma = random_formula_set(rng, shape, 3, 14);
    const bool expect = sat_bruteforce(gamma).has_value();
    REQUIRE(dp_sat(gamma) == expect);
    CHECK(oracle::satisfiable(gamma) == expect);
  }
}

TEST_CASE("dp_implication examples", "[twdp]") {
  CHECK(dp_implication(std::vector<Formula>{P("p"), P("p -> q")}, std::vector<Formula>{P("q")}));
  CHECK_FALSE(dp_implication(std::vector<Formula>{P("p | q")}, std::vector<Formula>{P("p")}));
  CHECK(dp_implication(std::vector<Formula>{P("p & !p")}, std::vector<Formula>{P("q")}));
  CHECK(dp_implication(std::vector<Formula>{P("p")}, std::vector<Formula>{}));
}

TEST_CASE("dp_implication agrees with the truth-table oracle", "[twdp][property]") {
  Rng rng(43);
  FormulaShape shape;
  shape.variables = 4;
  for (int t = 0; t < 200; ++t) {
    const auto inst = random_implication(rng, shape, 14);
    const bool expect = oracle::implies(inst.premises, inst.conclusions);
    REQUIRE(dp_implication(inst.premises, inst.conclusions) == expect);
    CHECK(implies_bruteforce(inst.premises, inst.conclusions) == expect);
  }
}

TEST_CASE("verdict does not depend on the decomposition", "[twdp][property]") {
  Rng rng(47);
  FormulaShape shape;
  shape.variables = 4;
  for (int t = 0; t < 100; ++t) {
    const auto gamma = random_formula_set(rng, shape, 3, 12);
    const Graph& g = constraint_graph(gamma).graph;
    const auto a = heuristic_decomposition(g, Heuristic::MinDegree);
    const auto b = heuristic_decomposition(g, Heuristic::MinFill);
    const auto c = exact_treewidth(g).decomposition;
    const bool v = dp_sat(gamma, &a);
    CHECK(dp_sat(gamma, &b) == v);
    CHECK(dp_sat(gamma, &c) == v);
  }
}

TEST_CASE("entailment oracles", "[twdp]") {
  const auto brute = make_oracle(OracleKind::Brute);
  const auto dp = make_oracle(OracleKind::TwDp);
  CHECK(oracle_kind_from_name("brute") == OracleKind::Brute);
  CHECK(oracle_kind_from_name("twdp") == OracleKind::TwDp);
  CHECK_THROWS(oracle_kind_from_name("sat"));
  for (const auto* o : {brute.get(), dp.get()}) {
    CHECK(o->entails({}, P("p | !p")));
    CHECK_FALSE(o->entails({}, P("p")));
    const std::vector<Formula> prem{A("L p -> p"), A("L p")};
    CHECK(o->entails(prem, P("p")));
  }

  Rng rng(53);
  FormulaShape shape;
  shape.variables = 4;
  for (int t = 0; t < 300; ++t) {
    const auto [prem, phi] = random_entailment_query(rng, shape, 12);
    const bool expect = oracle::implies(prem, {phi});
    REQUIRE(brute->entails(prem, phi) == expect);
    REQUIRE(dp->entails(prem, phi) == expect);
  }
}

TEST_CASE("twdp oracle handles a 200-variable chain", "[twdp]") {
  const auto dp = make_oracle(OracleKind::TwDp);
  const auto chain = gen_chain(200);
  const auto start = std::chrono::steady_clock::now();
  CHECK(dp->entails(chain, Formula::var("x200")));
  CHECK_FALSE(dp->entails(chain, Formula::negation(Formula::var("x200"))));
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(s < 1.0);
  CHECK_THROWS_AS(make_oracle(OracleKind::Brute)->entails(chain, Formula::var("x200")), ResourceLimit);
}
