#pragma once

#include <string>
#include <string_view>

#include "nmlkit/graph.hpp"
#include "nmlkit/treewidth.hpp"

namespace nmlkit {

// PACE 2017 track A formats. Vertices and bags are 1-based on disk.

/// Parses `p tw n m` followed by `u v` edge lines; `c` lines are comments.
Graph read_gr(std::string_view text);
/// Header plus edges in (u, v) order with u < v.
std::string write_gr(const Graph& g);

/// Parses `s td nb maxbag n`, `b id v...` lines and tree edges. Bag ids must
/// be exactly 1..nb; bag `i` ends up at index i-1.
TreeDecomposition read_td(std::string_view text);
/// Bags by id with vertices ascending, then tree edges as sorted (a, b), a < b.
std::string write_td(const TreeDecomposition& td, std::size_t n_vertices);

/// Label sidecar: one `<id> <main|edge|none> <description>` line per vertex.
std::string write_labels(const Graph& g);
/// Applies a label sidecar to `g`.
void read_labels(std::string_view text, Graph& g);

}  // namespace nmlkit
