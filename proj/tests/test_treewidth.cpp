#include <catch_amalgamated.hpp>

#include <algorithm>
#include <map>

#include "nmlkit/error.hpp"
#include "nmlkit/families.hpp"
#include "nmlkit/pace.hpp"
#include "nmlkit/random.hpp"
#include "nmlkit/treewidth.hpp"
#include "oracles.hpp"

using namespace nmlkit;

namespace {
Graph path(int n) {
  Graph g(static_cast<std::size_t>(n));
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}
Graph complete(int n) {
  Graph g(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}
TreeDecomposition bags(std::vector<std::vector<int>> bs, std::vector<std::pair<int, int>> es) {
  TreeDecomposition td;
  for (auto& b : bs) td.add_bag(b);
  for (auto [a, b] : es) td.add_tree_edge(a, b);
  return td;
}
bool has(const std::vector<Violation>& vs, TdCondition c) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.condition == c; });
}
}  // namespace

TEST_CASE("validate_decomposition", "[treewidth]") {
  const Graph edge = path(2);
  CHECK(validate_decomposition(edge, bags({{0, 1}}, {})).empty());
  const auto split = validate_decomposition(edge, bags({{0}, {1}}, {{0, 1}}));
  REQUIRE(has(split, TdCondition::EdgeCoverage));
  const Graph tri = complete(3);
  const auto v = validate_decomposition(tri, bags({{0, 1}, {1, 2}, {0, 2}}, {{0, 1}, {1, 2}}));
  REQUIRE(has(v, TdCondition::Connectivity));
  CHECK(has(validate_decomposition(edge, bags({{0, 1}, {0}}, {})), TdCondition::Tree));
  CHECK(has(validate_decomposition(path(3), bags({{0, 1}}, {})), TdCondition::VertexCoverage));
  CHECK_THROWS_AS(validate_decomposition(edge, bags({{0, 5}}, {})), InvalidInput);
}

TEST_CASE("width", "[treewidth]") {
  CHECK(width(bags({{0, 1, 2}}, {})) == 2);
  CHECK(width(bags({{0}, {1}}, {{0, 1}})) == 0);
  CHECK(exact_treewidth(complete(4)).width == 3);
  CHECK_THROWS_AS(width(TreeDecomposition{}), InvalidInput);
}

TEST_CASE("heuristics", "[treewidth]") {
  for (auto h : {Heuristic::MinDegree, Heuristic::MinFill}) {
    CHECK(width(heuristic_decomposition(path(5), h)) == 1);
    CHECK(width(heuristic_decomposition(complete(4), h)) == 3);
  }
  CHECK(width(heuristic_decomposition(gen_pseudo_clique(4, 1), Heuristic::MinFill)) == 3);
}

TEST_CASE("exact treewidth", "[treewidth]") {
  CHECK(exact_treewidth(path(5)).width == 1);
  CHECK(exact_treewidth(complete(5)).width == 4);
  CHECK(exact_treewidth(gen_pseudo_clique(5, 2)).width == 4);
  for (int n = 3; n <= 6; ++n)
    for (int k = 0; k <= 3; ++k) CHECK(exact_treewidth(gen_pseudo_clique(n, k)).width == n - 1);
}

TEST_CASE("exact treewidth reports the kernel cap", "[treewidth]") {
  Rng rng(2);
  const Graph g = random_graph(rng, 40, 0.5);
  CHECK_THROWS_AS(exact_treewidth(g, std::nullopt, 10), ResourceLimit);
}

TEST_CASE("decompositions on random graphs", "[treewidth][property]") {
  Rng rng(17);
  for (int t = 0; t < 500; ++t) {
    const int n = std::uniform_int_distribution<int>(1, 12)(rng);
    const Graph g = random_graph(rng, n, std::uniform_real_distribution<double>(0.1, 0.7)(rng));
    const auto a = heuristic_decomposition(g, Heuristic::MinDegree);
    const auto b = heuristic_decomposition(g, Heuristic::MinFill);
    CHECK(validate_decomposition(g, a).empty());
    CHECK(validate_decomposition(g, b).empty());
    if (t % 5 != 0) continue;
    const auto e = exact_treewidth(g);
    CHECK(validate_decomposition(g, e.decomposition).empty());
    CHECK(width(e.decomposition) == e.width);
    CHECK(e.width == oracle::treewidth(g));
    CHECK(e.width <= width(a));
    CHECK(e.width <= width(b));
    CHECK(minor_min_width(g) <= e.width);
    const auto lb = pseudo_clique_lower_bound(g);
    CHECK(lb.bound - 1 <= e.width);
  }
}

TEST_CASE("make_nice", "[treewidth]") {
  const auto nice = make_nice(bags({{0, 1}}, {}));
  REQUIRE(nice.nodes.size() == 3);
  CHECK(nice.nodes[0].kind == NiceKind::Leaf);
  CHECK(nice.nodes[0].bag.empty());
  CHECK(nice.nodes[1].kind == NiceKind::Introduce);
  CHECK(nice.nodes[1].vertex == 0);
  CHECK(nice.nodes[2].kind == NiceKind::Introduce);
  CHECK(nice.nodes[2].vertex == 1);
  CHECK(nice.root == 2);

  Rng rng(19);
  for (int t = 0; t < 100; ++t) {
    const Graph g = random_graph(rng, std::uniform_int_distribution<int>(1, 14)(rng), 0.3);
    const auto td = heuristic_decomposition(g, Heuristic::MinFill);
    const auto nd = make_nice(td);
    CHECK(validate_decomposition(g, nd.to_tree_decomposition()).empty());
    CHECK(width(nd.to_tree_decomposition()) == width(td));
    for (std::size_t i = 0; i < nd.nodes.size(); ++i) {
      const auto& x = nd.nodes[i];
      for (int c : x.children) CHECK(static_cast<std::size_t>(c) < i);
      switch (x.kind) {
        case NiceKind::Leaf:
          CHECK(x.children.empty());
          CHECK(x.bag.empty());
          break;
        case NiceKind::Join:
          REQUIRE(x.children.size() == 2);
          CHECK(nd.nodes[static_cast<std::size_t>(x.children[0])].bag == x.bag);
          CHECK(nd.nodes[static_cast<std::size_t>(x.children[1])].bag == x.bag);
          break;
        case NiceKind::Introduce:
        case NiceKind::Forget: {
          REQUIRE(x.children.size() == 1);
          const auto& child = nd.nodes[static_cast<std::size_t>(x.children[0])].bag;
          const auto& big = x.kind == NiceKind::Introduce ? x.bag : child;
          const auto& small = x.kind == NiceKind::Introduce ? child : x.bag;
          CHECK(big.size() == small.size() + 1);
          CHECK(std::binary_search(big.begin(), big.end(), x.vertex));
          CHECK_FALSE(std::binary_search(small.begin(), small.end(), x.vertex));
          break;
        }
      }
    }
  }
}

TEST_CASE("pseudo-clique recognition", "[treewidth]") {
  Graph star(4);
  for (int i = 1; i < 4; ++i) star.add_edge(0, i);
  CHECK_FALSE(is_pseudo_clique(star, {1, 2, 3}));
  CHECK(is_pseudo_clique(complete(3), {0, 1, 2}));
  CHECK(is_pseudo_clique(gen_pseudo_clique(4, 3), {0, 1, 2, 3}));
  PseudoCliqueSpec mixed;
  mixed.n = 4;
  mixed.lengths[{0, 1}] = 2;
  mixed.lengths[{1, 3}] = 1;
  CHECK(is_pseudo_clique(gen_pseudo_clique(mixed), {0, 1, 2, 3}));
  Graph extra = gen_pseudo_clique(3, 1);
  extra.add_edge(3, 4);
  CHECK_FALSE(is_pseudo_clique(extra, {0, 1, 2}));
}

TEST_CASE("pseudo-clique lower bound", "[treewidth]") {
  CHECK(pseudo_clique_lower_bound(gen_pseudo_clique(4, 1)).bound == 4);
  CHECK(pseudo_clique_lower_bound(complete(4)).bound == 4);
  CHECK(pseudo_clique_lower_bound(path(5)).bound == 2);
}

TEST_CASE("normalize_pseudo on fixed inputs", "[treewidth]") {
  const Graph g = gen_pseudo_clique(3, 1);
  const auto td = bags({{0, 1, 2, 3, 4, 5}}, {});
  const auto out = normalize_pseudo(g, td);
  CHECK(validate_decomposition(g, out).empty());
  CHECK(width(out) <= 5);
  for (int e = 3; e < 6; ++e) {
    int holders = 0;
    for (const auto& b : out.bags)
      if (std::binary_search(b.begin(), b.end(), e)) {
        ++holders;
        CHECK(b.size() == 3);
      }
    CHECK(holders == 1);
  }
  const Graph tri = gen_pseudo_clique(3, 0);
  const auto t2 = bags({{0, 1, 2}}, {});
  CHECK(normalize_pseudo(tri, t2) == t2);
}

TEST_CASE("normalize_pseudo keeps validity and width", "[treewidth][property]") {
  Rng rng(31);
  for (int t = 0; t < 100; ++t) {
    const Graph g = gen_pseudo_clique(random_pseudo_clique_spec(rng, 6, 3));
    const auto td = heuristic_decomposition(g, t % 2 ? Heuristic::MinFill : Heuristic::MinDegree);
    const auto out = normalize_pseudo(g, td);
    CHECK(validate_decomposition(g, out).empty());
    CHECK(width(out) <= width(td));
    // Every edge-node ends up only in bags of size <= 3.
    for (const auto& b : out.bags) {
      const bool edge_bag = std::any_of(b.begin(), b.end(), [&](int v) { return g.label(v) == VertexLabel::Edge; });
      if (edge_bag) CHECK(b.size() <= 3);
    }
  }
}

TEST_CASE("maximum clique", "[treewidth]") {
  CHECK(maximum_clique(complete(5)).size() == 5);
  CHECK(maximum_clique(path(4)).size() == 2);
  CHECK(maximum_clique(Graph(3)).size() == 1);
}

TEST_CASE("PACE formats", "[pace]") {
  const Graph g = gen_pseudo_clique(3, 1);
  const std::string gr = write_gr(g);
  CHECK(gr.rfind("p tw 6 6\n", 0) == 0);
  CHECK(read_gr(gr) == g);
  CHECK(write_gr(read_gr(gr)) == gr);
  CHECK(read_gr("c hello\np tw 3 2\n1 2\nc mid\n2 3\n") == path(3));
  CHECK_THROWS(read_gr("p tw 2 1\n1 3\n"));
  CHECK_THROWS(read_gr("1 2\n"));
  CHECK_THROWS(read_gr("p tw 2 2\n1 2\n"));

  const auto td = bags({{0, 1}, {1, 2}}, {{1, 0}});
  const std::string text = write_td(td, 3);
  CHECK(text == "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n");
  CHECK(write_td(read_td(text), 3) == text);
  CHECK_THROWS(read_td("s td 2 2 3\nb 1 1 2\nb 1 2 3\n"));
  CHECK_THROWS(read_td("s td 2 2 3\nb 1 1 2\n"));
  CHECK_THROWS(read_td("s td 1 1 3\nb 1 1 2\n"));

  Graph labelled = gen_pseudo_clique(3, 1);
  Graph plain = read_gr(write_gr(labelled));
  read_labels(write_labels(labelled), plain);
  for (int v = 0; v < 6; ++v) {
    CHECK(plain.label(v) == labelled.label(v));
    CHECK(plain.description(v) == labelled.description(v));
  }
}

TEST_CASE("round-trips on random graphs", "[pace][property]") {
  Rng rng(37);
  for (int t = 0; t < 100; ++t) {
    const Graph g = random_graph(rng, std::uniform_int_distribution<int>(1, 15)(rng), 0.3);
    const std::string gr = write_gr(g);
    CHECK(write_gr(read_gr(gr)) == gr);
    const std::string td = write_td(heuristic_decomposition(g, Heuristic::MinDegree), g.size());
    CHECK(write_td(read_td(td), g.size()) == td);
  }
}
