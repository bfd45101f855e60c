#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nbr/graph.hpp"
#include "nbr/sizes.hpp"
#include "nbr/tree_decomposition.hpp"

namespace nbr {

enum class NodeKind { leaf, introduce, forget, join };

/// One node of a nice decomposition. `vertex` is the introduced or forgotten
/// vertex and `position` its index in the larger of the two bags involved
/// (this node's bag for introduce, the child's bag for forget).
struct NiceNode {
  NodeKind kind = NodeKind::leaf;
  std::vector<Vertex> bag;  ///< sorted; bit i of a bag subset is bag[i]
  Vertex vertex = -1;
  int position = -1;
  int children[2] = {-1, -1};
  int parent = -1;

  int num_children() const { return (children[0] >= 0) + (children[1] >= 0); }
};

/// Rooted nice decomposition with empty leaf and root bags.
///
/// Nodes are stored children-first: every child index is smaller than its
/// parent's, and the root is the last node. A forward sweep is therefore a
/// bottom-up pass and a backward sweep a top-down one.
struct NiceDecomposition {
  std::vector<NiceNode> nodes;
  Vertex num_vertices = 0;
  int width = -1;

  int root() const { return static_cast<int>(nodes.size()) - 1; }
  /// For each vertex, the node directly below the one that forgets it.
  std::vector<int> top_nodes() const;
  /// Flattens back into a plain decomposition (one bag per node).
  TreeDecomposition to_tree_decomposition() const;
};

/// Roots `td` at bag 0 and rebuilds it from introduce/forget chains and
/// binary joins. Equal adjacent bags collapse. Throws InvalidDecomposition if
/// `td` fails validate_td.
NiceDecomposition make_nice(const Graph& g, const TreeDecomposition& td);

/// Empty string when every node satisfies its kind's bag rule and the
/// ordering/root conventions hold; otherwise the first violation.
std::string check_nice(const NiceDecomposition& nd);

using Count = std::uint32_t;
using Table = std::vector<Count>;

/// Bit mask (over `bag` positions) of the neighbours of v inside `bag`.
std::uint64_t bag_neighbour_mask(const Graph& g, std::span<const Vertex> bag, Vertex v);

/// Per node, Y -> |N(Y) ∩ P| where P is the set of vertices forgotten below
/// the node. Each table has 2^|bag| entries.
std::vector<Table> past_tables(const Graph& g, const NiceDecomposition& nd);

/// Per node, Y -> |N(Y) ∩ F| where F is every vertex neither in the bag nor
/// forgotten below it.
std::vector<Table> future_tables(const Graph& g, const NiceDecomposition& nd,
                                 std::span<const Table> past);

/// Closed 2-neighbourhood sizes from the two table families.
SizesResult second_pass(const Graph& g, const NiceDecomposition& nd, std::span<const Table> past,
                        std::span<const Table> future);

struct TwOptions {
  /// Refuse decompositions wider than this; tables hold 2^(width+1) entries.
  int max_width = 25;
  EliminationStrategy heuristic = EliminationStrategy::min_fill;
};

struct TwStats {
  /// Largest number of table entries alive at once.
  std::uint64_t peak_table_entries = 0;
};

/// Closed 2-neighbourhood sizes in O(2^w w n). Uses `td` when given,
/// otherwise a greedy decomposition. Keeps only the tables still needed, so
/// memory follows the live frontier rather than the whole tree.
SizesResult solve_tw(const Graph& g, const std::optional<TreeDecomposition>& td = std::nullopt,
                     const TwOptions& options = {}, TwStats* stats = nullptr);

}  // namespace nbr
