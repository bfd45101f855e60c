#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nbr/graph.hpp"

namespace nbr {

/// Bags of vertices connected by a tree. Bags are kept sorted.
struct TreeDecomposition {
  Vertex num_vertices = 0;
  std::vector<std::vector<Vertex>> bags;
  std::vector<std::pair<int, int>> tree_edges;
  /// Non-fatal remarks from parsing, e.g. a declared width that did not match.
  std::vector<std::string> warnings;

  /// Largest bag size minus one; -1 when every bag is empty.
  int width() const;
};

/// PACE .td: `s td <bags> <width+1> <n>`, `b <id> <v...>` (1-indexed), tree
/// edges `i j`, comments `c`. Structural validity is checked separately.
TreeDecomposition parse_td(std::istream& in);
TreeDecomposition parse_td(std::string_view text);
void write_td(std::ostream& out, const TreeDecomposition& td);

/// First witness of each violated condition. Empty means valid.
struct TdReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  std::string summary() const;
};

TdReport validate_td(const Graph& g, const TreeDecomposition& td);

enum class EliminationStrategy { min_degree, min_fill };

/// Decomposition from a greedy elimination ordering. Always valid; no
/// guarantee on width beyond being an upper bound on the treewidth.
TreeDecomposition greedy_td(const Graph& g, EliminationStrategy strategy);

/// Width-min(rows, cols) path decomposition of generate_grid(rows, cols),
/// sweeping along the longer side.
TreeDecomposition grid_path_decomposition(Vertex rows, Vertex cols);

}  // namespace nbr
