#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace nmlkit {

enum class VertexLabel { None, Main, Edge };

const char* label_name(VertexLabel l) noexcept;

/// Simple undirected graph on vertices 0..n-1, optionally labelled.
///
/// File formats number vertices from 1; the in-memory graph is 0-based.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : adj_(n), labels_(n, VertexLabel::None), descriptions_(n) {}

  std::size_t size() const noexcept { return adj_.size(); }
  std::size_t edge_count() const noexcept { return edges_; }

  /// Adds {u, v}; duplicates are ignored, self-loops rejected.
  void add_edge(int u, int v);
  bool has_edge(int u, int v) const;
  const std::vector<int>& neighbors(int v) const { return adj_.at(static_cast<std::size_t>(v)); }
  std::size_t degree(int v) const { return neighbors(v).size(); }
  /// Edges as (u, v) with u < v, lexicographically sorted.
  std::vector<std::pair<int, int>> edges() const;

  void set_label(int v, VertexLabel label, std::string description = {});
  VertexLabel label(int v) const { return labels_.at(static_cast<std::size_t>(v)); }
  const std::string& description(int v) const { return descriptions_.at(static_cast<std::size_t>(v)); }
  bool labelled() const noexcept { return labelled_; }

  friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

 private:
  void check(int v) const;

  std::vector<std::vector<int>> adj_;
  std::vector<VertexLabel> labels_;
  std::vector<std::string> descriptions_;
  std::size_t edges_ = 0;
  bool labelled_ = false;
};

/// Subgraph induced by `keep` (any order); vertex i of the result is keep[i].
Graph induced_subgraph(const Graph& g, const std::vector<int>& keep);

}  // namespace nmlkit
