#include <catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

#include "nmlkit/ael.hpp"
#include "nmlkit/dl.hpp"
#include "nmlkit/error.hpp"
#include "nmlkit/mso.hpp"
#include "nmlkit/random.hpp"
#include "nmlkit/structures.hpp"
#include "oracles.hpp"

using namespace nmlkit;

namespace {
Formula P(const char* s) { return parse_formula(s, FormulaMode::Propositional); }
Formula A(const char* s) { return parse_formula(s, FormulaMode::Autoepistemic); }
const Basis kBasis{Connective::Not, Connective::And, Connective::Or, Connective::Imp, Connective::True, Connective::False};

RelationalStructure bare(int n) {
  Vocabulary v;
  v.add("E", 2);
  v.add("P", 1);
  RelationalStructure s(v);
  for (int i = 0; i < n; ++i) s.add_element({"v" + std::to_string(i), std::nullopt, -1});
  return s;
}
}  // namespace

TEST_CASE("text form round-trips", "[mso]") {
  for (const char* text : {"E X. A x. x in X", "A x. (P(x) -> E y. (E(x,y) & ~(x = y)))",
                           "(true | false)", "E X. (A x. (x in X <-> P(x)) ^ false)"}) {
    const MsoFormula f = parse_mso(text);
    CHECK(parse_mso(f.to_string()) == f);
  }
  CHECK_THROWS_AS(parse_mso("E x."), SyntaxError);
  CHECK(parse_mso("E X. E Y. A x. (x in X | x in Y)").so_depth() == 2);
}

TEST_CASE("basic evaluation", "[mso]") {
  auto s = bare(2);
  CHECK(eval_mso(s, parse_mso("E M. A x. x in M")));
  CHECK_FALSE(eval_mso(s, parse_mso("A M. E x. x in M")));
  s.add("E", {0, 1});
  s.add("P", {1});
  CHECK(eval_mso(s, parse_mso("E x. E y. (E(x,y) & P(y))")));
  CHECK_FALSE(eval_mso(s, parse_mso("A x. P(x)")));
  // A set closed under E that contains 0 must contain 1.
  CHECK(eval_mso(s, parse_mso("A X. ((E x. (x in X & ~P(x)) & A x. A y. ((x in X & E(x,y)) -> y in X)) -> "
                              "E y. (P(y) & y in X))")));
  MsoEnv env;
  env.elements["z"] = 1;
  CHECK(eval_mso(s, parse_mso("P(z)"), env));
  env.sets["Z"] = {0};
  CHECK_FALSE(eval_mso(s, parse_mso("z in Z"), env));
  CHECK_THROWS_AS(eval_mso(s, parse_mso("P(w)")), InvalidInput);
  CHECK_THROWS_AS(eval_mso(s, parse_mso("E x. Q(x)")), InvalidInput);
}

TEST_CASE("universe caps and step budget", "[mso]") {
  const auto big = bare(30);
  CHECK_THROWS_AS(eval_mso(big, parse_mso("E X. E Y. A x. (x in X | x in Y)")), ResourceLimit);
  Limits tight;
  tight.mso_steps = 50;
  CHECK_THROWS_AS(eval_mso(bare(12), parse_mso("A X. A Y. E x. (x in X <-> x in Y)"), {}, tight), ResourceLimit);
}

TEST_CASE("theta_sat on small structures", "[mso]") {
  const auto sat = paper_formula(PaperFormula::Sat, kBasis, FormulaVariant::Corrected);
  CHECK_FALSE(eval_mso(build_prop_structure({P("p & !p")}, kBasis), sat));
  CHECK(eval_mso(build_prop_structure({P("p | q")}, kBasis), sat));
  CHECK(eval_mso(build_prop_structure({}, kBasis), sat));
}

TEST_CASE("encodings on the classic fixtures", "[mso]") {
  DefaultTheory t;
  t.d.push_back({Formula::constant(true), P("p"), P("q")});
  const auto ext = paper_formula(PaperFormula::Extension, kBasis, FormulaVariant::Corrected, StructureKind::Dl);
  CHECK(eval_mso(build_dl_structure(t, kBasis), ext));
  DefaultTheory blocked;
  blocked.d.push_back({Formula::constant(true), P("p"), P("!p")});
  CHECK_FALSE(eval_mso(build_dl_structure(blocked, kBasis), ext));

  const auto full = paper_formula(PaperFormula::FullExists, kBasis, FormulaVariant::Corrected, StructureKind::Ae);
  CHECK_FALSE(eval_mso(build_ael_structure(AeTheory{{A("!L p -> p")}}, kBasis), full));
  CHECK(eval_mso(build_ael_structure(AeTheory{{A("L p -> p")}}, kBasis), full));
  CHECK(eval_mso(build_ael_structure(AeTheory{}, kBasis), full));
}

TEST_CASE("theta_assign is open in M and the sentences are closed", "[mso]") {
  const auto assign = paper_formula(PaperFormula::Assign, kBasis, FormulaVariant::Corrected);
  const auto s = build_prop_structure({P("p & !q")}, kBasis);
  MsoEnv env;
  const int p = *s.find(P("p")), q = *s.find(P("q")), nq = *s.find(P("!q")), all = *s.find(P("p & !q"));
  env.sets["M"] = {p, nq, all};
  CHECK(eval_mso(s, assign, env));
  env.sets["M"] = {p, q, nq, all};
  CHECK_FALSE(eval_mso(s, assign, env));
  CHECK_THROWS_AS(eval_mso(s, assign), InvalidInput);
}

TEST_CASE("as-printed variants build and evaluate", "[mso]") {
  for (auto name : {PaperFormula::Struc, PaperFormula::Sat, PaperFormula::Imp, PaperFormula::Extension,
                    PaperFormula::FullExists}) {
    const auto a = paper_formula(name, kBasis, FormulaVariant::AsPrinted);
    const auto c = paper_formula(name, kBasis, FormulaVariant::Corrected);
    CHECK(a.node_count() > 0);
    CHECK(parse_mso(a.to_string()) == a);
    CHECK(parse_mso(c.to_string()) == c);
    CHECK(paper_formula_from_name(paper_formula_name(name)) == name);
  }
  CHECK_THROWS_AS(paper_formula_from_name("nope"), InvalidInput);
  const auto sat = paper_formula(PaperFormula::Sat, kBasis, FormulaVariant::AsPrinted);
  CHECK(eval_mso(build_prop_structure({P("p | q")}, kBasis), sat));
}

TEST_CASE("sat and imp encodings match truth tables", "[mso][property]") {
  Rng rng(21);
  FormulaShape shape;
  shape.basis = Basis{Connective::Not, Connective::Or};
  const auto sat = paper_formula(PaperFormula::Sat, shape.basis, FormulaVariant::Corrected);
  for (int t = 0; t < 200; ++t) {
    const auto gamma = random_formula_set(rng, shape, 3, 8);
    CHECK(eval_mso(build_prop_structure(gamma, shape.basis), sat) == oracle::satisfiable(gamma));
  }
  FormulaShape wide;
  const auto imp = paper_formula(PaperFormula::Imp, wide.basis, FormulaVariant::Corrected, StructureKind::Imp);
  for (int t = 0; t < 100; ++t) {
    const auto inst = random_implication(rng, wide, 8);
    CHECK(eval_mso(build_imp_structure(inst.premises, inst.conclusions, wide.basis), imp) ==
          oracle::implies(inst.premises, inst.conclusions));
  }
}

TEST_CASE("extension and full-set encodings match the semantic oracles", "[mso][property]") {
  Rng rng(23);
  const auto ext = paper_formula(PaperFormula::Extension, kBasis, FormulaVariant::Corrected, StructureKind::Dl);
  for (int t = 0; t < 60; ++t) {
    const auto th = random_literal_default_theory(rng, 3, 3);
    CHECK(eval_mso(build_dl_structure(th, kBasis), ext) == !oracle::default_extensions(th).empty());
  }
  const auto full = paper_formula(PaperFormula::FullExists, kBasis, FormulaVariant::Corrected, StructureKind::Ae);
  for (int t = 0; t < 60; ++t) {
    const auto th = random_ae_theory(rng, 3, 6, 3);
    CHECK(eval_mso(build_ael_structure(th, kBasis), full) == !oracle::ae_belief_states(th).empty());
  }
}

TEST_CASE("evaluation is invariant under universe reordering", "[mso][property]") {
  Rng rng(29);
  FormulaShape shape;
  const auto sat = paper_formula(PaperFormula::Sat, shape.basis, FormulaVariant::Corrected);
  const auto ext = paper_formula(PaperFormula::Extension, kBasis, FormulaVariant::Corrected, StructureKind::Dl);
  for (int t = 0; t < 10; ++t) {
    const auto s = build_prop_structure(random_formula_set(rng, shape, 3, 8), shape.basis);
    const auto d = build_dl_structure(random_literal_default_theory(rng, 3, 3), kBasis);
    for (const auto* st : {&s, &d}) {
      std::vector<int> perm(st->size());
      std::iota(perm.begin(), perm.end(), 0);
      std::shuffle(perm.begin(), perm.end(), rng);
      const auto& phi = st == &s ? sat : ext;
      CHECK(eval_mso(*st, phi) == eval_mso(st->permuted(perm), phi));
    }
  }
}
