#include "nmlkit/treewidth.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_map>

#include "nmlkit/error.hpp"

namespace nmlkit {

int TreeDecomposition::add_bag(std::vector<int> bag) {
  std::sort(bag.begin(), bag.end());
  bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
  bags.push_back(std::move(bag));
  return static_cast<int>(bags.size()) - 1;
}

int width(const TreeDecomposition& td) {
  if (td.bags.empty()) throw InvalidInput("width of an empty decomposition");
  std::size_t best = 0;
  for (const auto& b : td.bags) best = std::max(best, b.size());
  return static_cast<int>(best) - 1;
}

// ---------------------------------------------------------------------------
// Validation

std::vector<Violation> validate_decomposition(const Graph& g, const TreeDecomposition& td) {
  const int n = static_cast<int>(g.size());
  const int nb = static_cast<int>(td.bags.size());
  for (int b = 0; b < nb; ++b)
    for (int v : td.bags[static_cast<std::size_t>(b)])
      if (v < 0 || v >= n)
        throw InvalidInput("bag " + std::to_string(b) + " names vertex " + std::to_string(v) +
                           " outside the graph");
  std::vector<std::vector<int>> tree(static_cast<std::size_t>(nb));
  for (auto [a, b] : td.tree_edges) {
    if (a < 0 || a >= nb || b < 0 || b >= nb) throw InvalidInput("tree edge names an unknown bag");
    tree[static_cast<std::size_t>(a)].push_back(b);
    tree[static_cast<std::size_t>(b)].push_back(a);
  }

  std::vector<Violation> out;

  // T must be a tree.
  if (nb > 0) {
    std::vector<char> seen(static_cast<std::size_t>(nb), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
      int t = stack.back();
      stack.pop_back();
      for (int u : tree[static_cast<std::size_t>(t)])
        if (!seen[static_cast<std::size_t>(u)]) {
          seen[static_cast<std::size_t>(u)] = 1;
          ++reached;
          stack.push_back(u);
        }
    }
    if (reached != nb || static_cast<int>(td.tree_edges.size()) != nb - 1) {
      std::vector<int> witness;
      for (int b = 0; b < nb; ++b)
        if (!seen[static_cast<std::size_t>(b)]) {
          witness.push_back(b);
          break;
        }
      out.push_back({TdCondition::Tree,
                     "bags do not form a tree (" + std::to_string(nb) + " bags, " +
                         std::to_string(td.tree_edges.size()) + " edges, " + std::to_string(reached) +
                         " reachable from bag 0)",
                     witness});
    }
  }

  std::vector<std::vector<int>> holding(static_cast<std::size_t>(n));
  for (int b = 0; b < nb; ++b)
    for (int v : td.bags[static_cast<std::size_t>(b)]) holding[static_cast<std::size_t>(v)].push_back(b);

  // (i) every vertex in some bag
  for (int v = 0; v < n; ++v)
    if (holding[static_cast<std::size_t>(v)].empty())
      out.push_back({TdCondition::VertexCoverage, "vertex " + std::to_string(v) + " is in no bag", {v}});

  // (ii) every edge inside some bag
  for (auto [u, v] : g.edges()) {
    const auto& a = holding[static_cast<std::size_t>(u)];
    const auto& b = holding[static_cast<std::size_t>(v)];
    std::vector<int> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
    if (common.empty())
      out.push_back({TdCondition::EdgeCoverage,
                     "edge {" + std::to_string(u) + "," + std::to_string(v) + "} is in no bag", {u, v}});
  }

  // (iii) bags holding a vertex are connected in T
  std::vector<int> mark(static_cast<std::size_t>(nb), -1);
  std::vector<char> visited(static_cast<std::size_t>(nb), 0);
  for (int v = 0; v < n; ++v) {
    const auto& hb = holding[static_cast<std::size_t>(v)];
    if (hb.size() < 2) continue;
    for (int b : hb) {
      mark[static_cast<std::size_t>(b)] = v;
      visited[static_cast<std::size_t>(b)] = 0;
    }
    std::vector<int> stack{hb.front()};
    visited[static_cast<std::size_t>(hb.front())] = 1;
    while (!stack.empty()) {
      int t = stack.back();
      stack.pop_back();
      for (int u : tree[static_cast<std::size_t>(t)])
        if (mark[static_cast<std::size_t>(u)] == v && !visited[static_cast<std::size_t>(u)]) {
          visited[static_cast<std::size_t>(u)] = 1;
          stack.push_back(u);
        }
    }
    for (int b : hb)
      if (!visited[static_cast<std::size_t>(b)]) {
        out.push_back({TdCondition::Connectivity,
                       "bags holding vertex " + std::to_string(v) + " are disconnected (bags " +
                           std::to_string(hb.front()) + " and " + std::to_string(b) + ")",
                       {v, hb.front(), b}});
        break;
      }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Elimination orderings

namespace {

using AdjSets = std::vector<std::vector<int>>;  // sorted

void sorted_insert(std::vector<int>& v, int x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) v.insert(it, x);
}

void sorted_erase(std::vector<int>& v, int x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it != v.end() && *it == x) v.erase(it);
}

bool sorted_contains(const std::vector<int>& v, int x) { return std::binary_search(v.begin(), v.end(), x); }

AdjSets adjacency(const Graph& g) {
  AdjSets adj(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) adj[v] = g.neighbors(static_cast<int>(v));
  return adj;
}

long fill_in(const AdjSets& adj, int v) {
  const auto& nv = adj[static_cast<std::size_t>(v)];
  long missing = 0;
  for (std::size_t a = 0; a < nv.size(); ++a)
    for (std::size_t b = a + 1; b < nv.size(); ++b)
      if (!sorted_contains(adj[static_cast<std::size_t>(nv[a])], nv[b])) ++missing;
  return missing;
}

// Removes v, turning its neighbourhood into a clique. Returns that neighbourhood.
std::vector<int> eliminate(AdjSets& adj, int v) {
  std::vector<int> nv = std::move(adj[static_cast<std::size_t>(v)]);
  adj[static_cast<std::size_t>(v)].clear();
  for (int u : nv) sorted_erase(adj[static_cast<std::size_t>(u)], v);
  for (std::size_t a = 0; a < nv.size(); ++a)
    for (std::size_t b = a + 1; b < nv.size(); ++b) {
      sorted_insert(adj[static_cast<std::size_t>(nv[a])], nv[b]);
      sorted_insert(adj[static_cast<std::size_t>(nv[b])], nv[a]);
    }
  return nv;
}

}  // namespace

std::vector<int> elimination_ordering(const Graph& g, Heuristic method) {
  const std::size_t n = g.size();
  AdjSets adj = adjacency(g);
  auto score = [&](int v) -> long {
    return method == Heuristic::MinDegree ? static_cast<long>(adj[static_cast<std::size_t>(v)].size())
                                          : fill_in(adj, v);
  };
  std::set<std::pair<long, int>> queue;
  std::vector<long> current(n);
  for (std::size_t v = 0; v < n; ++v) {
    current[v] = score(static_cast<int>(v));
    queue.emplace(current[v], static_cast<int>(v));
  }
  std::vector<char> gone(n, 0);
  std::vector<int> order;
  order.reserve(n);
  while (!queue.empty()) {
    const int v = queue.begin()->second;
    queue.erase(queue.begin());
    gone[static_cast<std::size_t>(v)] = 1;
    order.push_back(v);
    const std::vector<int> nv = eliminate(adj, v);
    std::vector<int> touched = nv;
    if (method == Heuristic::MinFill)
      for (int u : nv)
        for (int w : adj[static_cast<std::size_t>(u)]) touched.push_back(w);
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (int u : touched) {
      if (gone[static_cast<std::size_t>(u)]) continue;
      const long s = score(u);
      if (s == current[static_cast<std::size_t>(u)]) continue;
      queue.erase({current[static_cast<std::size_t>(u)], u});
      current[static_cast<std::size_t>(u)] = s;
      queue.emplace(s, u);
    }
  }
  return order;
}

namespace {

std::vector<std::vector<int>> higher_neighbourhoods(const Graph& g, const std::vector<int>& order) {
  if (order.size() != g.size()) throw InvalidInput("ordering does not cover the graph");
  std::vector<char> seen(g.size(), 0);
  for (int v : order) {
    if (v < 0 || static_cast<std::size_t>(v) >= g.size() || seen[static_cast<std::size_t>(v)])
      throw InvalidInput("ordering is not a permutation");
    seen[static_cast<std::size_t>(v)] = 1;
  }
  AdjSets adj = adjacency(g);
  std::vector<std::vector<int>> higher(g.size());
  for (int v : order) higher[static_cast<std::size_t>(v)] = eliminate(adj, v);
  return higher;
}

}  // namespace

int ordering_width(const Graph& g, const std::vector<int>& order) {
  int best = -1;
  for (const auto& h : higher_neighbourhoods(g, order)) best = std::max(best, static_cast<int>(h.size()));
  return best;
}

TreeDecomposition decomposition_from_ordering(const Graph& g, const std::vector<int>& order) {
  TreeDecomposition td;
  if (g.size() == 0) {
    td.add_bag({});
    return td;
  }
  const auto higher = higher_neighbourhoods(g, order);
  std::vector<int> pos(g.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
  for (int v : order) {
    auto bag = higher[static_cast<std::size_t>(v)];
    bag.push_back(v);
    td.add_bag(std::move(bag));
  }
  int previous_root = -1;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& h = higher[static_cast<std::size_t>(order[i])];
    if (h.empty()) {
      // component root; chain roots together (they share no vertices)
      if (previous_root >= 0) td.add_tree_edge(previous_root, static_cast<int>(i));
      previous_root = static_cast<int>(i);
      continue;
    }
    int parent = pos[static_cast<std::size_t>(h.front())];
    for (int u : h) parent = std::min(parent, pos[static_cast<std::size_t>(u)]);
    td.add_tree_edge(static_cast<int>(i), parent);
  }
  return td;
}

TreeDecomposition heuristic_decomposition(const Graph& g, Heuristic method) {
  return decomposition_from_ordering(g, elimination_ordering(g, method));
}

// ---------------------------------------------------------------------------
// Exact treewidth

int minor_min_width(const Graph& g) {
  std::vector<std::set<int>> adj(g.size());
  for (std::size_t v = 0; v < g.size(); ++v)
    adj[v] = std::set<int>(g.neighbors(static_cast<int>(v)).begin(), g.neighbors(static_cast<int>(v)).end());
  std::vector<char> alive(g.size(), 1);
  std::size_t remaining = g.size();
  int lb = 0;
  while (remaining > 1) {
    int v = -1;
    for (std::size_t u = 0; u < g.size(); ++u)
      if (alive[u] && (v < 0 || adj[u].size() < adj[static_cast<std::size_t>(v)].size())) v = static_cast<int>(u);
    auto& av = adj[static_cast<std::size_t>(v)];
    lb = std::max(lb, static_cast<int>(av.size()));
    alive[static_cast<std::size_t>(v)] = 0;
    --remaining;
    if (av.empty()) continue;
    int target = -1;
    for (int u : av)
      if (target < 0 || adj[static_cast<std::size_t>(u)].size() < adj[static_cast<std::size_t>(target)].size())
        target = u;
    // contract v into target
    for (int u : av) {
      adj[static_cast<std::size_t>(u)].erase(v);
      if (u != target) {
        adj[static_cast<std::size_t>(u)].insert(target);
        adj[static_cast<std::size_t>(target)].insert(u);
      }
    }
    av.clear();
  }
  return lb;
}

namespace {

class KernelSearch {
 public:
  KernelSearch(const AdjSets& adj, const std::vector<int>& vertices) : ids_(vertices) {
    const std::size_t k = vertices.size();
    std::unordered_map<int, int> local;
    for (std::size_t i = 0; i < k; ++i) local[vertices[i]] = static_cast<int>(i);
    adj_.assign(k, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (int u : adj[static_cast<std::size_t>(vertices[i])]) adj_[i] |= std::uint64_t{1} << local.at(u);
    full_ = k == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << k) - 1;
  }

  // Finds an ordering of width < bound if one exists.
  std::optional<std::pair<int, std::vector<int>>> search(int floor, int bound) {
    best_ = bound;
    floor_ = floor;
    found_.reset();
    memo_.clear();
    prefix_.clear();
    dfs(0, floor);
    return found_;
  }

 private:
  std::uint64_t higher(std::uint64_t eliminated, int v) const {
    std::uint64_t comp = 0, frontier = std::uint64_t{1} << v;
    std::uint64_t reach = 0;
    while (frontier) {
      std::uint64_t next = 0;
      for (std::uint64_t f = frontier; f; f &= f - 1) {
        const int x = std::countr_zero(f);
        reach |= adj_[static_cast<std::size_t>(x)];
        next |= adj_[static_cast<std::size_t>(x)] & eliminated & ~comp;
      }
      comp |= next;
      frontier = next;
    }
    return reach & ~eliminated & ~(std::uint64_t{1} << v);
  }

  void finish(int width) {
    best_ = width;
    std::vector<int> order;
    for (int v : prefix_) order.push_back(ids_[static_cast<std::size_t>(v)]);
    std::uint64_t used = 0;
    for (int v : prefix_) used |= std::uint64_t{1} << v;
    for (std::size_t i = 0; i < ids_.size(); ++i)
      if (!(used >> i & 1u)) order.push_back(ids_[i]);
    found_ = std::make_pair(width, std::move(order));
  }

  void dfs(std::uint64_t eliminated, int cur) {
    if (cur >= best_) return;
    const int remaining = std::popcount(full_ & ~eliminated);
    if (remaining <= cur + 1) {
      finish(std::max(cur, floor_));
      return;
    }
    if (auto it = memo_.find(eliminated); it != memo_.end() && it->second <= cur) return;
    memo_[eliminated] = cur;

    std::vector<std::pair<int, int>> candidates;  // (|higher|, v)
    std::vector<std::uint64_t> hs(adj_.size(), 0);
    int min_degree = 64;
    for (std::uint64_t rest = full_ & ~eliminated; rest; rest &= rest - 1) {
      const int v = std::countr_zero(rest);
      hs[static_cast<std::size_t>(v)] = higher(eliminated, v);
      const int d = std::popcount(hs[static_cast<std::size_t>(v)]);
      min_degree = std::min(min_degree, d);
      candidates.emplace_back(d, v);
    }
    if (std::max(cur, min_degree) >= best_) return;
    std::sort(candidates.begin(), candidates.end());

    // a simplicial vertex can be eliminated first without loss
    for (auto [d, v] : candidates) {
      const std::uint64_t h = hs[static_cast<std::size_t>(v)];
      bool clique = true;
      for (std::uint64_t r = h; r && clique; r &= r - 1) {
        const int u = std::countr_zero(r);
        const std::uint64_t want = h & ~(std::uint64_t{1} << u);
        if ((hs[static_cast<std::size_t>(u)] & want) != want) clique = false;
      }
      if (clique) {
        prefix_.push_back(v);
        dfs(eliminated | (std::uint64_t{1} << v), std::max(cur, d));
        prefix_.pop_back();
        return;
      }
    }
    for (auto [d, v] : candidates) {
      if (std::max(cur, d) >= best_) break;
      prefix_.push_back(v);
      dfs(eliminated | (std::uint64_t{1} << v), std::max(cur, d));
      prefix_.pop_back();
    }
  }

  std::vector<int> ids_;
  std::vector<std::uint64_t> adj_;
  std::uint64_t full_ = 0;
  int best_ = 0;
  int floor_ = 0;
  std::vector<int> prefix_;
  std::unordered_map<std::uint64_t, int> memo_;
  std::optional<std::pair<int, std::vector<int>>> found_;
};

bool is_clique(const AdjSets& adj, const std::vector<int>& vs) {
  for (std::size_t a = 0; a < vs.size(); ++a)
    for (std::size_t b = a + 1; b < vs.size(); ++b)
      if (!sorted_contains(adj[static_cast<std::size_t>(vs[a])], vs[b])) return false;
  return true;
}

}  // namespace

ExactTreewidth exact_treewidth(const Graph& g, std::optional<int> upper_hint, std::size_t kernel_cap) {
  ExactTreewidth result;
  if (g.size() == 0) {
    result.width = -1;
    result.decomposition.add_bag({});
    return result;
  }
  AdjSets adj = adjacency(g);
  std::vector<char> alive(g.size(), 1);
  int low = minor_min_width(g);
  std::vector<int> prefix;

  // Safe reductions: simplicial vertices, and almost simplicial vertices of degree <= low.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (!alive[v]) continue;
      const auto& nv = adj[v];
      const int d = static_cast<int>(nv.size());
      bool take = is_clique(adj, nv);
      if (take) {
        low = std::max(low, d);
      } else if (d <= low) {
        for (std::size_t skip = 0; skip < nv.size() && !take; ++skip) {
          std::vector<int> rest;
          for (std::size_t i = 0; i < nv.size(); ++i)
            if (i != skip) rest.push_back(nv[i]);
          take = is_clique(adj, rest);
        }
      }
      if (take) {
        alive[v] = 0;
        prefix.push_back(static_cast<int>(v));
        eliminate(adj, static_cast<int>(v));
        changed = true;
      }
    }
  }

  std::vector<int> kernel;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (alive[v]) kernel.push_back(static_cast<int>(v));

  // Upper bound: min-fill on the kernel.
  Graph kg(kernel.size());
  {
    std::unordered_map<int, int> local;
    for (std::size_t i = 0; i < kernel.size(); ++i) local[kernel[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < kernel.size(); ++i)
      for (int u : adj[static_cast<std::size_t>(kernel[i])])
        if (local.at(u) > static_cast<int>(i)) kg.add_edge(static_cast<int>(i), local.at(u));
  }
  std::vector<int> kernel_order;
  for (int v : elimination_ordering(kg, Heuristic::MinFill)) kernel_order.push_back(kernel[static_cast<std::size_t>(v)]);
  int kernel_upper = kernel.empty() ? -1 : ordering_width(kg, elimination_ordering(kg, Heuristic::MinFill));
  const int kernel_lower = kernel.empty() ? -1 : minor_min_width(kg);

  if (std::max(low, kernel_lower) < kernel_upper) {
    if (kernel.size() > kernel_cap || kernel.size() > 64)
      throw ResourceLimit("exact treewidth: kernel of " + std::to_string(kernel.size()) +
                          " vertices after reductions exceeds the cap of " + std::to_string(kernel_cap));
    KernelSearch search(adj, kernel);
    const int floor = std::max(low, kernel_lower);
    std::optional<std::pair<int, std::vector<int>>> found;
    if (upper_hint && *upper_hint < kernel_upper) found = search.search(floor, *upper_hint + 1);
    if (!found) found = search.search(floor, kernel_upper);
    if (found) kernel_order = found->second;
  }

  result.ordering = prefix;
  result.ordering.insert(result.ordering.end(), kernel_order.begin(), kernel_order.end());
  result.width = ordering_width(g, result.ordering);
  result.decomposition = decomposition_from_ordering(g, result.ordering);
  return result;
}

// ---------------------------------------------------------------------------
// Nice decompositions

TreeDecomposition NiceDecomposition::to_tree_decomposition() const {
  TreeDecomposition td;
  for (const auto& n : nodes) td.add_bag(n.bag);
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (int c : nodes[i].children) td.add_tree_edge(c, static_cast<int>(i));
  return td;
}

NiceDecomposition make_nice(const TreeDecomposition& td) {
  const int nb = static_cast<int>(td.bags.size());
  if (nb == 0) throw InvalidInput("make_nice: empty decomposition");
  std::vector<std::vector<int>> tree(static_cast<std::size_t>(nb));
  for (auto [a, b] : td.tree_edges) {
    if (a < 0 || a >= nb || b < 0 || b >= nb || a == b) throw InvalidInput("make_nice: bad tree edge");
    tree[static_cast<std::size_t>(a)].push_back(b);
    tree[static_cast<std::size_t>(b)].push_back(a);
  }
  if (static_cast<int>(td.tree_edges.size()) != nb - 1) throw InvalidInput("make_nice: bags do not form a tree");
  std::vector<int> parent(static_cast<std::size_t>(nb), -2), order;
  order.reserve(static_cast<std::size_t>(nb));
  parent[0] = -1;
  order.push_back(0);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int u : tree[static_cast<std::size_t>(order[i])])
      if (parent[static_cast<std::size_t>(u)] == -2) {
        parent[static_cast<std::size_t>(u)] = order[i];
        order.push_back(u);
      }
  if (static_cast<int>(order.size()) != nb) throw InvalidInput("make_nice: bags do not form a tree");

  NiceDecomposition nice;
  auto push = [&](NiceKind kind, int vertex, std::vector<int> bag, std::vector<int> children) {
    nice.nodes.push_back({kind, vertex, std::move(bag), std::move(children)});
    return static_cast<int>(nice.nodes.size()) - 1;
  };
  auto sorted_bag = [&](int t) {
    auto b = td.bags[static_cast<std::size_t>(t)];
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
  };
  // Transforms the subtree rooted at `node` (bag `from`) into one whose top bag is `to`.
  auto morph = [&](int node, std::vector<int> from, const std::vector<int>& to) {
    std::vector<int> drop, add;
    std::set_difference(from.begin(), from.end(), to.begin(), to.end(), std::back_inserter(drop));
    std::set_difference(to.begin(), to.end(), from.begin(), from.end(), std::back_inserter(add));
    for (int v : drop) {
      sorted_erase(from, v);
      node = push(NiceKind::Forget, v, from, {node});
    }
    for (int v : add) {
      sorted_insert(from, v);
      node = push(NiceKind::Introduce, v, from, {node});
    }
    return node;
  };

  std::vector<int> top(static_cast<std::size_t>(nb), -1);
  std::vector<std::vector<int>> kids(static_cast<std::size_t>(nb));
  for (int t : order)
    if (parent[static_cast<std::size_t>(t)] >= 0) kids[static_cast<std::size_t>(parent[static_cast<std::size_t>(t)])].push_back(t);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const int t = *it;
    const auto bag = sorted_bag(t);
    std::vector<int> branches;
    for (int c : kids[static_cast<std::size_t>(t)])
      branches.push_back(morph(top[static_cast<std::size_t>(c)], sorted_bag(c), bag));
    if (branches.empty()) {
      branches.push_back(morph(push(NiceKind::Leaf, -1, {}, {}), {}, bag));
    }
    int acc = branches.front();
    for (std::size_t i = 1; i < branches.size(); ++i) acc = push(NiceKind::Join, -1, bag, {acc, branches[i]});
    top[static_cast<std::size_t>(t)] = acc;
  }
  nice.root = top[0];
  return nice;
}

// ---------------------------------------------------------------------------
// Pseudo-cliques

std::optional<PseudoCliqueLayout> pseudo_clique_layout(const Graph& g, const std::vector<int>& mains_in) {
  PseudoCliqueLayout layout;
  layout.mains = mains_in;
  std::sort(layout.mains.begin(), layout.mains.end());
  layout.mains.erase(std::unique(layout.mains.begin(), layout.mains.end()), layout.mains.end());
  const std::size_t n = g.size();
  std::vector<char> is_main(n, 0);
  for (int m : layout.mains) {
    if (m < 0 || static_cast<std::size_t>(m) >= n) throw InvalidInput("main vertex out of range");
    is_main[static_cast<std::size_t>(m)] = 1;
  }
  for (std::size_t v = 0; v < n; ++v)
    if (!is_main[v] && g.degree(static_cast<int>(v)) != 2) return std::nullopt;

  auto record = [&](int u, int w, std::vector<int> path) {
    if (u == w) return false;
    if (u > w) {
      std::swap(u, w);
      std::reverse(path.begin(), path.end());
    }
    return layout.paths.emplace(std::make_pair(u, w), std::move(path)).second;
  };

  for (auto [u, v] : g.edges())
    if (is_main[static_cast<std::size_t>(u)] && is_main[static_cast<std::size_t>(v)])
      if (!record(u, v, {})) return std::nullopt;

  std::vector<char> seen(n, 0);
  for (std::size_t s = 0; s < n; ++s) {
    if (is_main[s] || seen[s]) continue;
    // find an end of this chain: a vertex with a main neighbour
    std::vector<int> comp{static_cast<int>(s)};
    seen[s] = 1;
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (int w : g.neighbors(comp[i]))
        if (!is_main[static_cast<std::size_t>(w)] && !seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          comp.push_back(w);
        }
    int start = -1, start_main = -1;
    for (int v : comp)
      for (int w : g.neighbors(v))
        if (is_main[static_cast<std::size_t>(w)] && start < 0) {
          start = v;
          start_main = w;
        }
    if (start < 0) return std::nullopt;  // a cycle of edge-nodes
    std::vector<int> path{start};
    int prev = start_main, cur = start, end_main = -1;
    while (true) {
      int next = -1;
      for (int w : g.neighbors(cur))
        if (w != prev) next = w;
      if (next < 0) return std::nullopt;
      if (is_main[static_cast<std::size_t>(next)]) {
        end_main = next;
        break;
      }
      path.push_back(next);
      prev = cur;
      cur = next;
      if (path.size() > comp.size()) return std::nullopt;
    }
    if (path.size() != comp.size()) return std::nullopt;
    if (!record(start_main, end_main, std::move(path))) return std::nullopt;
  }
  const std::size_t m = layout.mains.size();
  if (layout.paths.size() != m * (m - (m > 0 ? 1 : 0)) / 2) return std::nullopt;
  return layout;
}

bool is_pseudo_clique(const Graph& g, const std::vector<int>& mains) {
  return pseudo_clique_layout(g, mains).has_value();
}

TreeDecomposition normalize_pseudo(const Graph& g, const TreeDecomposition& td, std::optional<std::vector<int>> mains) {
  std::vector<int> main_nodes;
  if (mains) {
    main_nodes = *mains;
  } else {
    if (!g.labelled()) throw InvalidInput("normalize_pseudo: graph has no main/edge labels");
    for (std::size_t v = 0; v < g.size(); ++v)
      if (g.label(static_cast<int>(v)) == VertexLabel::Main) main_nodes.push_back(static_cast<int>(v));
  }
  auto layout = pseudo_clique_layout(g, main_nodes);
  if (!layout) throw InvalidInput("normalize_pseudo: graph is not a pseudo-clique over the given mains");
  if (layout->mains.size() < 3) throw InvalidInput("normalize_pseudo: needs at least 3 main vertices");
  if (auto v = validate_decomposition(g, td); !v.empty())
    throw InvalidInput("normalize_pseudo: input is not a tree decomposition: " + v.front().message);

  TreeDecomposition out = td;
  for (auto& b : out.bags) {
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
  }
  for (const auto& [pair, path] : layout->paths) {
    if (path.empty()) continue;
    const auto [i, j] = pair;
    std::vector<int> sorted_path = path;
    std::sort(sorted_path.begin(), sorted_path.end());
    auto on_path = [&](int v) { return std::binary_search(sorted_path.begin(), sorted_path.end(), v); };
    int anchor = -1;
    for (std::size_t b = 0; b < out.bags.size(); ++b) {
      auto& bag = out.bags[b];
      if (std::none_of(bag.begin(), bag.end(), on_path)) continue;
      if (anchor < 0 && sorted_contains(bag, i)) anchor = static_cast<int>(b);
      bag.erase(std::remove_if(bag.begin(), bag.end(), on_path), bag.end());
      sorted_insert(bag, j);
    }
    if (anchor < 0) throw InvalidInput("normalize_pseudo: no bag holds main vertex and first edge-node");
    int prev = anchor;
    for (std::size_t r = 0; r < path.size(); ++r) {
      // {i, d1, j}, {d1, d2, j}, ..., {d_{k-1}, d_k, j}
      std::vector<int> bag = r == 0 ? std::vector<int>{i, path[0], j} : std::vector<int>{path[r - 1], path[r], j};
      const int id = out.add_bag(std::move(bag));
      out.add_tree_edge(prev, id);
      prev = id;
    }
  }
  return out;
}

std::vector<int> maximum_clique(const Graph& g) {
  const std::size_t n = g.size();
  if (n > 64) throw ResourceLimit("maximum clique: more than 64 vertices");
  std::vector<std::uint64_t> adj(n, 0);
  for (auto [u, v] : g.edges()) {
    adj[static_cast<std::size_t>(u)] |= std::uint64_t{1} << v;
    adj[static_cast<std::size_t>(v)] |= std::uint64_t{1} << u;
  }
  std::uint64_t best = 0;
  std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)> expand = [&](std::uint64_t r, std::uint64_t p,
                                                                                 std::uint64_t x) {
    if (!p && !x) {
      if (std::popcount(r) > std::popcount(best) || (std::popcount(r) == std::popcount(best) && r < best && r))
        best = r;
      return;
    }
    if (std::popcount(r) + std::popcount(p) <= std::popcount(best)) return;
    int pivot = -1, most = -1;
    for (std::uint64_t c = p | x; c; c &= c - 1) {
      const int u = std::countr_zero(c);
      const int k = std::popcount(p & adj[static_cast<std::size_t>(u)]);
      if (k > most) {
        most = k;
        pivot = u;
      }
    }
    for (std::uint64_t c = p & ~adj[static_cast<std::size_t>(pivot)]; c; c &= c - 1) {
      const int v = std::countr_zero(c);
      const std::uint64_t bit = std::uint64_t{1} << v;
      expand(r | bit, p & adj[static_cast<std::size_t>(v)], x & adj[static_cast<std::size_t>(v)]);
      p &= ~bit;
      x |= bit;
    }
  };
  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  if (n > 0) expand(0, all, 0);
  std::vector<int> out;
  for (std::uint64_t c = best; c; c &= c - 1) out.push_back(std::countr_zero(c));
  return out;
}

PseudoCliqueBound pseudo_clique_lower_bound(const Graph& g, std::size_t vertex_cap) {
  if (g.size() > vertex_cap || g.size() > 64)
    throw ResourceLimit("pseudo-clique lower bound: " + std::to_string(g.size()) + " vertices exceeds the cap of " +
                        std::to_string(std::min<std::size_t>(vertex_cap, 64)));
  AdjSets adj = adjacency(g);
  std::vector<char> alive(g.size(), 1);
  // interior vertices absorbed by each suppressed edge
  std::map<std::pair<int, int>, std::vector<int>> interior;
  auto key = [](int a, int b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); };
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t v = 0; v < g.size(); ++v) {
      if (!alive[v] || adj[v].size() != 2) continue;
      const int a = adj[v][0], b = adj[v][1];
      if (sorted_contains(adj[static_cast<std::size_t>(a)], b)) continue;
      std::vector<int> inner;
      for (auto e : {key(a, static_cast<int>(v)), key(static_cast<int>(v), b)}) {
        auto it = interior.find(e);
        if (it != interior.end()) {
          inner.insert(inner.end(), it->second.begin(), it->second.end());
          interior.erase(it);
        }
      }
      inner.push_back(static_cast<int>(v));
      alive[v] = 0;
      sorted_erase(adj[static_cast<std::size_t>(a)], static_cast<int>(v));
      sorted_erase(adj[static_cast<std::size_t>(b)], static_cast<int>(v));
      adj[v].clear();
      sorted_insert(adj[static_cast<std::size_t>(a)], b);
      sorted_insert(adj[static_cast<std::size_t>(b)], a);
      interior[key(a, b)] = std::move(inner);
      changed = true;
    }
  }
  std::vector<int> keep;
  for (std::size_t v = 0; v < g.size(); ++v)
    if (alive[v]) keep.push_back(static_cast<int>(v));
  Graph minor(keep.size());
  std::unordered_map<int, int> local;
  for (std::size_t i = 0; i < keep.size(); ++i) local[keep[i]] = static_cast<int>(i);
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (int u : adj[static_cast<std::size_t>(keep[i])])
      if (local.at(u) > static_cast<int>(i)) minor.add_edge(static_cast<int>(i), local.at(u));

  PseudoCliqueBound out;
  for (int v : maximum_clique(minor)) out.clique.push_back(keep[static_cast<std::size_t>(v)]);
  out.bound = static_cast<int>(out.clique.size());
  std::vector<int> used;
  for (std::size_t a = 0; a < out.clique.size(); ++a)
    for (std::size_t b = a + 1; b < out.clique.size(); ++b) {
      auto it = interior.find(key(out.clique[a], out.clique[b]));
      if (it != interior.end()) used.insert(used.end(), it->second.begin(), it->second.end());
    }
  std::sort(used.begin(), used.end());
  out.paths_disjoint = std::adjacent_find(used.begin(), used.end()) == used.end();
  return out;
}

}  // namespace nmlkit
