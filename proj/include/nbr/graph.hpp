#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace nbr {

using Vertex = std::int32_t;
using Edge = std::pair<Vertex, Vertex>;

/// Undirected simple graph in compressed adjacency form.
///
/// Vertices are 0..n-1. Each neighbour list is sorted and free of duplicates,
/// adjacency is symmetric and there are no self-loops. A Graph is immutable
/// once built, so it can be shared freely between threads.
class Graph {
 public:
  Graph() = default;

  /// Builds from an edge list. Throws GraphError on self-loops, duplicate
  /// edges (in either orientation) or endpoints outside [0, n).
  static Graph from_edges(Vertex n, std::span<const Edge> edges);

  Vertex num_vertices() const { return n_; }
  std::size_t num_edges() const { return targets_.size() / 2; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
  }
  std::size_t degree(Vertex v) const { return offsets_[v + 1] - offsets_[v]; }

  /// O(log deg) membership test on the sorted neighbour list.
  bool has_edge(Vertex u, Vertex v) const;

  /// Every edge once, as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edges() const;

 private:
  Vertex n_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> targets_;
};

enum class GraphFormat { edge_list, pace_gr };

GraphFormat parse_graph_format(std::string_view name);

/// Reads a graph. edge-list: header `n m`, then m lines `u v` (0-indexed),
/// `#` comments. pace-gr: header `p tw n m`, 1-indexed edges, `c` comments.
/// Errors carry the offending line number.
Graph parse_graph(std::istream& in, GraphFormat format);
Graph parse_graph(std::string_view text, GraphFormat format);

void write_edge_list(std::ostream& out, const Graph& g);
void write_pace_gr(std::ostream& out, const Graph& g);

}  // namespace nbr
