#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nmlkit/graph.hpp"

namespace nmlkit {

/// Tree of bags. Bag ids are indices into `bags`; every bag is kept sorted.
struct TreeDecomposition {
  std::vector<std::vector<int>> bags;
  std::vector<std::pair<int, int>> tree_edges;

  int add_bag(std::vector<int> bag);
  void add_tree_edge(int a, int b) { tree_edges.emplace_back(a, b); }
  std::size_t bag_count() const noexcept { return bags.size(); }

  friend bool operator==(const TreeDecomposition&, const TreeDecomposition&) = default;
};

/// Largest bag size minus one. Throws InvalidInput on an empty decomposition.
int width(const TreeDecomposition& td);

enum class TdCondition { Tree, VertexCoverage, EdgeCoverage, Connectivity };

struct Violation {
  TdCondition condition;
  std::string message;
  std::vector<int> witness;  // vertex, edge endpoints, or bag ids
};

/// Empty iff `td` is a tree decomposition of `g`. Throws InvalidInput if a bag
/// names a vertex outside `g` or a tree edge names an unknown bag.
std::vector<Violation> validate_decomposition(const Graph& g, const TreeDecomposition& td);

enum class Heuristic { MinDegree, MinFill };

/// Greedy elimination ordering, ties broken by smallest vertex id.
std::vector<int> elimination_ordering(const Graph& g, Heuristic method);
/// Decomposition induced by eliminating vertices in `order`; one bag per vertex.
TreeDecomposition decomposition_from_ordering(const Graph& g, const std::vector<int>& order);
/// Width of the elimination ordering (max higher-neighbourhood size).
int ordering_width(const Graph& g, const std::vector<int>& order);
TreeDecomposition heuristic_decomposition(const Graph& g, Heuristic method);

struct ExactTreewidth {
  int width = -1;
  TreeDecomposition decomposition;
  std::vector<int> ordering;
};

/// Minimum width over all decompositions. Safe reductions (simplicial and
/// almost-simplicial vertices) run first; branch and bound over elimination
/// orderings handles the rest. Throws ResourceLimit when the kernel left after
/// reductions exceeds `kernel_cap` vertices.
ExactTreewidth exact_treewidth(const Graph& g, std::optional<int> upper_hint = std::nullopt,
                               std::size_t kernel_cap = 24);

/// Contraction-degeneracy (minor-min-width) lower bound.
int minor_min_width(const Graph& g);

enum class NiceKind { Leaf, Introduce, Forget, Join };

struct NiceNode {
  NiceKind kind = NiceKind::Leaf;
  int vertex = -1;  // introduced / forgotten vertex
  std::vector<int> bag;
  std::vector<int> children;
};

/// Rooted decomposition with leaf / introduce / forget / join nodes. Children
/// precede parents in `nodes`; `root` is the last node.
struct NiceDecomposition {
  std::vector<NiceNode> nodes;
  int root = -1;

  TreeDecomposition to_tree_decomposition() const;
};

/// Converts a valid decomposition, rooted at bag 0. Leaves are empty bags and
/// the root keeps bag 0's content. Width is preserved.
NiceDecomposition make_nice(const TreeDecomposition& td);

/// Main vertices of a pseudo-clique plus the edge-node path for each pair.
struct PseudoCliqueLayout {
  std::vector<int> mains;  // ascending
  /// For mains[a] < mains[b]: interior path from mains[a] towards mains[b].
  std::map<std::pair<int, int>, std::vector<int>> paths;
};

/// Recognises `g` as a pseudo-clique with the given main vertices: the other
/// vertices split into internally disjoint induced paths, exactly one per
/// unordered pair of mains (an empty path is a direct edge), and no other edges.
std::optional<PseudoCliqueLayout> pseudo_clique_layout(const Graph& g, const std::vector<int>& mains);
bool is_pseudo_clique(const Graph& g, const std::vector<int>& mains);

/// Rewrites `td` so that edge-nodes live only in a short chain of bags of
/// size <= 3 hanging off a bag of their first main vertex. Main pairs are
/// processed lexicographically; the anchor bag is the lowest-id bag holding
/// an edge-node of the pair together with the smaller main vertex.
/// `g` must be a pseudo-clique of size >= 3 whose mains are the vertices
/// labelled Main (or, when unlabelled, `mains`).
TreeDecomposition normalize_pseudo(const Graph& g, const TreeDecomposition& td,
                                   std::optional<std::vector<int>> mains = std::nullopt);

struct PseudoCliqueBound {
  int bound = 0;                 // max clique in the suppressed minor
  std::vector<int> clique;       // original vertex ids
  bool paths_disjoint = true;    // suppressed chains share no interior vertex
};

/// Suppresses degree-2 vertices with non-adjacent neighbours (an edge
/// contraction, so the result is a minor) until none remain, then returns the
/// largest clique. treewidth(g) >= bound - 1.
PseudoCliqueBound pseudo_clique_lower_bound(const Graph& g, std::size_t vertex_cap = 64);

/// Largest clique (Bron-Kerbosch with pivoting). Vertices ascending.
std::vector<int> maximum_clique(const Graph& g);

}  // namespace nmlkit
