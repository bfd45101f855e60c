#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "nbr/graph.hpp"
#include "nbr/set_family.hpp"
#include "nbr/sizes.hpp"

namespace nbr {

struct CoverSearchOptions {
  /// Abort with CapExceeded after this many search nodes.
  std::uint64_t node_budget = std::uint64_t{1} << 22;
};

/// Returns `hint` after checking it covers every edge (InvalidCover names an
/// uncovered edge otherwise), or a minimum vertex cover found by branch and
/// bound when no hint is given.
std::vector<Vertex> find_vertex_cover(const Graph& g,
                                      std::optional<std::span<const Vertex>> hint = std::nullopt,
                                      const CoverSearchOptions& options = {});

/// Throws InvalidCover naming the first uncovered edge.
void check_vertex_cover(const Graph& g, std::span<const Vertex> cover);

/// A vertex cover X (t vertices, bit i of a cover mask is cover[i]) and the
/// independent rest I split by degree: low when 2 * deg <= t, high otherwise.
/// Any two high vertices share a neighbour because their neighbourhoods are
/// both larger than half of X.
struct VertexCoverPartition {
  std::vector<Vertex> cover;
  std::vector<std::int32_t> cover_bit;  ///< per vertex: bit position, -1 if not in X
  std::vector<Vertex> low;
  std::vector<Vertex> high;

  int t() const { return static_cast<int>(cover.size()); }
  bool in_cover(Vertex v) const { return cover_bit[v] >= 0; }
};

/// Throws InvalidCover if `cover` misses an edge or repeats a vertex.
VertexCoverPartition partition(const Graph& g, std::span<const Vertex> cover);

/// |N^2[x]| for every cover vertex, in cover order.
std::vector<std::int64_t> cover_sizes(const Graph& g, const VertexCoverPartition& part);

/// For every vertex: the cover vertices within distance 2, as a mask over
/// cover bits. Only meaningful for independent vertices; cover entries are 0.
std::vector<SetMask> cover_reach_masks(const Graph& g, const VertexCoverPartition& part);

/// |{x in X : dist(v, x) <= 2}| for every independent vertex v (0 for cover
/// vertices).
std::vector<std::int64_t> cover_to_independent_counts(const Graph& g,
                                                      const VertexCoverPartition& part);

/// N(v) of an independent vertex as a mask over cover bits.
SetMask cover_neighbourhood(const Graph& g, const VertexCoverPartition& part, Vertex v);

/// low:  members N(v) for v in I_l, weight = multiplicity.
/// high: members X \ N(u) for u in I_h, weight = multiplicity.
struct CoverFamilies {
  WeightedSetFamily low;
  WeightedSetFamily high;
};

/// Throws CapExceeded if the cover has more than 64 vertices.
CoverFamilies build_families(const Graph& g, const VertexCoverPartition& part);

struct VcOptions {
  CoverSearchOptions search;
  /// Refuse covers larger than this (at most 64, the bitmask width).
  int max_cover = kMaxUniverse;
  QueryStrategy strategy = QueryStrategy::automatic;
};

/// Closed 2-neighbourhood sizes in O(2^{t/2} t^2 n) for a cover of size t.
/// Uses `hint` as the cover when given, otherwise searches for a minimum one.
SizesResult solve_vc(const Graph& g, std::optional<std::span<const Vertex>> hint = std::nullopt,
                     const VcOptions& options = {});

}  // namespace nbr
