#include <catch_amalgamated.hpp>

#include <random>

#include "nmlkit/error.hpp"
#include "nmlkit/formula.hpp"
#include "nmlkit/limits.hpp"
#include "nmlkit/random.hpp"
#include "nmlkit/theory.hpp"
#include "oracles.hpp"

using namespace nmlkit;

namespace {
Formula P(const char* s) { return parse_formula(s, FormulaMode::Propositional); }
Formula A(const char* s) { return parse_formula(s, FormulaMode::Autoepistemic); }
Formula v(const char* n) { return Formula::var(n); }
}  // namespace

TEST_CASE("parse builds the expected trees", "[formula]") {
  CHECK(P("p & !q") == Formula::conj(v("p"), Formula::negation(v("q"))));
  CHECK(A("L p -> p") == Formula::implies(Formula::believes(v("p")), v("p")));
  CHECK(P("X3(x, y, z)") == Formula::app(Connective::Xor3, {v("x"), v("y"), v("z")}));
  CHECK(P("T | F") == Formula::disj(Formula::constant(true), Formula::constant(false)));
}

TEST_CASE("implication is right associative and binds looser than or", "[formula]") {
  CHECK(P("a -> b -> c") == Formula::implies(v("a"), Formula::implies(v("b"), v("c"))));
  CHECK(P("a | b -> c") == Formula::implies(Formula::disj(v("a"), v("b")), v("c")));
  CHECK(P("a & b | c") == Formula::disj(Formula::conj(v("a"), v("b")), v("c")));
  CHECK(P("a <-> b -> c") == Formula::app(Connective::Iff, {v("a"), Formula::implies(v("b"), v("c"))}));
}

TEST_CASE("syntax errors report a position", "[formula]") {
  try {
    (void)P("p &");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 4);
  }
  CHECK_THROWS_AS(P("L p"), SyntaxError);
  CHECK_THROWS_AS(P("(p"), SyntaxError);
  CHECK_THROWS_AS(P("p q"), SyntaxError);
  CHECK_THROWS_AS(parse_formula("p ^ q", FormulaMode::Propositional, Basis{Connective::And}), SyntaxError);
}

TEST_CASE("evaluate", "[formula]") {
  CHECK_FALSE(evaluate(P("p & !p"), {{v("p"), true}}));
  const Formula lp = Formula::believes(v("p"));
  CHECK(evaluate(A("L p -> p"), {{lp, false}, {v("p"), false}}));
  CHECK_FALSE(evaluate(P("X3(x,y,z)"), {{v("x"), true}, {v("y"), true}, {v("z"), false}}));
  CHECK_THROWS_AS(evaluate(P("p & q"), {{v("p"), true}}), InvalidInput);
}

TEST_CASE("sat_bruteforce", "[formula]") {
  CHECK_FALSE(sat_bruteforce(std::vector{P("p & !p")}).has_value());
  const auto empty = sat_bruteforce(std::vector<Formula>{});
  REQUIRE(empty.has_value());
  CHECK(empty->empty());
  const auto m = sat_bruteforce(std::vector{P("p | q"), P("!p")});
  REQUIRE(m.has_value());
  CHECK(m->at(v("p")) == false);
  CHECK(m->at(v("q")) == true);
}

TEST_CASE("sat_bruteforce respects the atom cap", "[formula]") {
  std::vector<Formula> many;
  for (int i = 0; i < 26; ++i) many.push_back(Formula::var("x" + std::to_string(i)));
  CHECK_THROWS_AS(sat_bruteforce(many, 24), ResourceLimit);
}

TEST_CASE("implies_bruteforce", "[formula]") {
  CHECK(implies_bruteforce(std::vector{P("p"), P("p -> q")}, std::vector{P("q")}));
  CHECK_FALSE(implies_bruteforce(std::vector{P("p | q")}, std::vector{P("p")}));
  CHECK(implies_bruteforce(std::vector<Formula>{}, std::vector{P("p | !p")}));
}

TEST_CASE("subformulae deduplicate and list children first", "[formula]") {
  const auto pp = subformulae(P("p & p"));
  REQUIRE(pp.size() == 2);
  CHECK(pp[0] == v("p"));
  const Formula f = A("L p -> p");
  const auto sf = subformulae(f);
  CHECK(sf == std::vector{v("p"), Formula::believes(v("p")), f});
  const std::vector<Formula> one{f};
  CHECK(belief_subformulae(one) == std::vector{Formula::believes(v("p"))});
  const auto x = subformulae(P("!X3(x,y,z)"));
  CHECK(x.size() == 5);
}

TEST_CASE("random properties of formulas", "[formula][property]") {
  Rng rng(7);
  FormulaShape shape;
  shape.basis = Basis::standard();
  shape.variables = 4;
  for (int t = 0; t < 200; ++t) {
    const Formula f = random_formula(rng, shape);
    INFO(f.to_string());
    CHECK(subformulae(f).size() <= f.node_count());
    const Formula back = parse_formula(f.to_string(), FormulaMode::Propositional);
    CHECK(back == f);
    CHECK(parse_formula(back.to_string(), FormulaMode::Propositional) == f);
  }
}

TEST_CASE("brute-force oracles agree with hand-written truth tables", "[formula][property]") {
  Rng rng(11);
  FormulaShape shape;
  shape.basis = Basis::standard();
  shape.variables = 5;
  for (int t = 0; t < 200; ++t) {
    const auto gamma = random_formula_set(rng, shape, 4, 14);
    CHECK(sat_bruteforce(gamma).has_value() == oracle::satisfiable(gamma));
    const auto inst = random_implication(rng, shape, 14);
    const bool imp = implies_bruteforce(inst.premises, inst.conclusions);
    CHECK(imp == oracle::implies(inst.premises, inst.conclusions));
    bool via_sat = true;
    for (const auto& g : inst.conclusions) {
      auto with = inst.premises;
      with.push_back(Formula::negation(g));
      if (sat_bruteforce(with).has_value()) via_sat = false;
    }
    CHECK(imp == via_sat);
  }
}

TEST_CASE("a found model satisfies every formula", "[formula][property]") {
  Rng rng(3);
  FormulaShape shape;
  for (int t = 0; t < 100; ++t) {
    const auto gamma = random_formula_set(rng, shape, 3, 10);
    const auto m = sat_bruteforce(gamma);
    if (!m) continue;
    for (const auto& f : gamma) CHECK(evaluate(f, *m));
  }
}

TEST_CASE("basis parsing and connective menu", "[formula]") {
  const Basis b = Basis::parse("not,and,xor3");
  CHECK(b.contains(Connective::Xor3));
  CHECK_FALSE(b.contains(Connective::Or));
  CHECK(Basis::parse(b.to_string()) == b);
  CHECK_THROWS(Basis::parse("not,nand"));
  CHECK(connectives_used(P("p & !q")) == Basis{Connective::And, Connective::Not});
}

TEST_CASE("default theory format", "[theory]") {
  const DefaultTheory t = parse_default_theory("w: r\nd: T ; p ; q\n");
  REQUIRE(t.w.size() == 1);
  CHECK(t.w[0] == v("r"));
  REQUIRE(t.d.size() == 1);
  CHECK(t.d[0].prerequisite == Formula::constant(true));
  CHECK(t.d[0].justification == v("p"));
  CHECK(t.d[0].conclusion == v("q"));
  CHECK(parse_default_theory("") == DefaultTheory{});
  CHECK(parse_default_theory("# only a comment\n\n") == DefaultTheory{});
  try {
    (void)parse_default_theory("d: p ; q");
    FAIL("expected an error");
  } catch (const SyntaxError& e) {
    CHECK(std::string(e.what()).find("three parts") != std::string::npos);
  }
  CHECK(parse_default_theory(write_default_theory(t)) == t);
}

TEST_CASE("syntax errors inside files carry the file line", "[theory]") {
  try {
    (void)parse_default_theory("w: p\nw: q &\n");
    FAIL("expected an error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 2);
  }
}

TEST_CASE("autoepistemic, formula set and implication formats", "[theory]") {
  const AeTheory ae = parse_ae_theory("L p -> p\n# c\n!L q\n");
  REQUIRE(ae.sigma.size() == 2);
  CHECK(parse_ae_theory(write_ae_theory(ae)) == ae);
  CHECK_THROWS_AS(parse_formula_set("L p\n"), SyntaxError);
  const auto fs = parse_formula_set("p\np -> q\n");
  CHECK(parse_formula_set(write_formula_set(fs)) == fs);
  const auto imp = parse_implication("p: p\np: p -> q\nc: q\n");
  CHECK(imp.premises.size() == 2);
  CHECK(imp.conclusions == std::vector{v("q")});
  CHECK(parse_implication(write_implication(imp)) == imp);
  CHECK_THROWS_AS(parse_implication("q\n"), SyntaxError);
}

TEST_CASE("limits parse key=value lists", "[limits]") {
  const Limits l = Limits::parse("sat_atoms=10, dp_width=5");
  CHECK(l.sat_atoms == 10);
  CHECK(l.dp_width == 5);
  CHECK(l.dl_defaults == Limits{}.dl_defaults);
  CHECK_THROWS(Limits::parse("bogus=1"));
  CHECK_THROWS(Limits::parse("sat_atoms=x"));
}
