#include <catch_amalgamated.hpp>

#include <algorithm>

#include "nmlkit/dl.hpp"
#include "nmlkit/error.hpp"
#include "nmlkit/random.hpp"
#include "oracles.hpp"

using namespace nmlkit;

namespace {
DefaultTheory T(const char* text) { return parse_default_theory(text); }
}  // namespace

TEST_CASE("stage_fixpoint examples", "[dl]") {
  const auto brute = make_oracle(OracleKind::Brute);
  const auto a = stage_fixpoint(T("d: T ; p ; q"), {0}, *brute);
  CHECK(a.fixpoint);
  CHECK(a.applied == std::vector<int>{0});
  const auto b = stage_fixpoint(T("d: T ; p ; !p"), {0}, *brute);
  CHECK_FALSE(b.fixpoint);
  CHECK(b.applied.empty());
  const auto c = stage_fixpoint(T("w: r"), {}, *brute);
  CHECK(c.fixpoint);
  CHECK(c.applied.empty());
  CHECK_THROWS_AS(stage_fixpoint(T("d: T ; p ; q"), {3}, *brute), InvalidInput);
}

TEST_CASE("stage_fixpoint needs prerequisites derived in order", "[dl]") {
  const auto brute = make_oracle(OracleKind::Brute);
  const auto th = T("d: T ; a ; a\nd: a ; b ; b\nd: c ; T ; d");
  const auto r = stage_fixpoint(th, {0, 1}, *brute);
  CHECK(r.fixpoint);
  CHECK(r.applied == std::vector<int>{0, 1});
  // A self-supporting candidate is not grounded.
  CHECK_FALSE(stage_fixpoint(T("d: a ; T ; a"), {0}, *brute).fixpoint);
}

TEST_CASE("inconsistent W yields the inconsistent extension", "[dl]") {
  const auto brute = make_oracle(OracleKind::Brute);
  const auto r = extension_exists(T("w: p & !p\nd: T ; q ; q"), *brute);
  REQUIRE(r.exists);
  CHECK(r.witnesses == std::vector<ExtensionWitness>{{{}}});
}

TEST_CASE("extension_exists examples", "[dl]") {
  for (auto kind : {OracleKind::Brute, OracleKind::TwDp}) {
    const auto o = make_oracle(kind);
    const auto a = extension_exists(T("d: T ; p ; q"), *o);
    CHECK(a.exists);
    CHECK(a.witnesses == std::vector<ExtensionWitness>{{{0}}});
    const auto b = extension_exists(T("d: T ; p ; !p"), *o);
    CHECK_FALSE(b.exists);
    CHECK(b.witnesses.empty());
    const auto c = extension_exists(T(""), *o);
    CHECK(c.exists);
    CHECK(c.witnesses == std::vector<ExtensionWitness>{{{}}});
    // Nixon diamond: two extensions, in binary counting order.
    const auto d = extension_exists(T("w: q & r\nd: q ; p ; p\nd: r ; !p ; !p"), *o);
    CHECK(d.witnesses == std::vector<ExtensionWitness>{{{0}}, {{1}}});
  }
}

TEST_CASE("extension_exists cap", "[dl][limits]") {
  std::string text;
  for (int i = 0; i < 5; ++i) text += "d: T ; p ; q\n";
  Limits lim;
  lim.dl_defaults = 4;
  CHECK_THROWS_AS(extension_exists(T(text.c_str()), *make_oracle(OracleKind::Brute), lim), ResourceLimit);
}

TEST_CASE("extensions match the Reiter oracle", "[dl][property]") {
  Rng rng(59);
  const auto brute = make_oracle(OracleKind::Brute);
  const auto dp = make_oracle(OracleKind::TwDp);
  for (int t = 0; t < 200; ++t) {
    const DefaultTheory th = t % 2 ? random_default_theory(rng, 4, 4) : random_literal_default_theory(rng, 4, 4);
    const auto r = extension_exists(th, *brute);
    REQUIRE(extension_exists(th, *dp).witnesses == r.witnesses);
    CHECK(r.exists == !r.witnesses.empty());

    std::vector<oracle::Models> got;
    for (const auto& w : r.witnesses) {
      const auto again = stage_fixpoint(th, w.generating, *brute);
      CHECK(again.fixpoint);
      CHECK(again.applied == w.generating);
      got.push_back(oracle::theory_models(th, w.generating));
    }
    std::sort(got.begin(), got.end());
    got.erase(std::unique(got.begin(), got.end()), got.end());
    CHECK(got == oracle::default_extensions(th));
  }
}
