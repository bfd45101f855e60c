#pragma once

#include <cstdint>

#include "nbr/graph.hpp"

namespace nbr {

/// Uniform random graph with exactly m distinct edges.
Graph generate_gnm(Vertex n, std::size_t m, std::uint64_t seed);

/// Split graph with a planted vertex cover: vertices [0, t) form the cover,
/// vertices [t, n) are independent, and each (cover, independent) pair is an
/// edge with probability p.
Graph generate_split(Vertex n, Vertex t, double p, std::uint64_t seed);

/// rows x cols grid; vertex (r, c) has index r * cols + c.
Graph generate_grid(Vertex rows, Vertex cols);

}  // namespace nbr
