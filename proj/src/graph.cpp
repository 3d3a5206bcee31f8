#include "nmlkit/graph.hpp"

#include <algorithm>

#include "nmlkit/error.hpp"

namespace nmlkit {

const char* label_name(VertexLabel l) noexcept {
  switch (l) {
    case VertexLabel::Main: return "main";
    case VertexLabel::Edge: return "edge";
    case VertexLabel::None: return "none";
  }
  return "none";
}

void Graph::check(int v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= adj_.size())
    throw InvalidInput("vertex " + std::to_string(v) + " out of range (n=" + std::to_string(adj_.size()) + ")");
}

void Graph::add_edge(int u, int v) {
  check(u);
  check(v);
  if (u == v) throw InvalidInput("self-loop on vertex " + std::to_string(u));
  auto& au = adj_[static_cast<std::size_t>(u)];
  auto it = std::lower_bound(au.begin(), au.end(), v);
  if (it != au.end() && *it == v) return;
  au.insert(it, v);
  auto& av = adj_[static_cast<std::size_t>(v)];
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
  ++edges_;
}

bool Graph::has_edge(int u, int v) const {
  check(u);
  check(v);
  const auto& au = adj_[static_cast<std::size_t>(u)];
  return std::binary_search(au.begin(), au.end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(edges_);
  for (std::size_t u = 0; u < adj_.size(); ++u)
    for (int v : adj_[u])
      if (static_cast<int>(u) < v) out.emplace_back(static_cast<int>(u), v);
  return out;
}

void Graph::set_label(int v, VertexLabel label, std::string description) {
  check(v);
  labels_[static_cast<std::size_t>(v)] = label;
  descriptions_[static_cast<std::size_t>(v)] = std::move(description);
  labelled_ = true;
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& keep) {
  std::vector<int> index(g.size(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) index.at(static_cast<std::size_t>(keep[i])) = static_cast<int>(i);
  Graph h(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    const int v = keep[i];
    if (g.labelled()) h.set_label(static_cast<int>(i), g.label(v), g.description(v));
    for (int w : g.neighbors(v))
      if (index[static_cast<std::size_t>(w)] >= 0) h.add_edge(static_cast<int>(i), index[static_cast<std::size_t>(w)]);
  }
  return h;
}

}  // namespace nmlkit
