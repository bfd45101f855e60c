#include "nbr/generators.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <unordered_set>

#include "nbr/error.hpp"

namespace nbr {

Graph generate_gnm(Vertex n, std::size_t m, std::uint64_t seed) {
  if (n < 0) throw ConfigError("gnm: n must be non-negative");
  const std::uint64_t max_edges = static_cast<std::uint64_t>(n) * (n - 1) / 2;
  if (n == 0 ? m > 0 : m > max_edges) {
    throw ConfigError("gnm: m = " + std::to_string(m) + " exceeds n(n-1)/2 = " +
                      std::to_string(n == 0 ? 0 : max_edges));
  }
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  edges.reserve(m);

  if (m * 2 > max_edges) {
    // Dense: pick m of all pairs by a partial shuffle.
    std::vector<Edge> all;
    all.reserve(max_edges);
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) all.emplace_back(u, v);
    }
    for (std::size_t i = 0; i < m; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, all.size() - 1);
      std::swap(all[i], all[pick(rng)]);
    }
    edges.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(m));
  } else {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(m * 2);
    std::uniform_int_distribution<Vertex> pick(0, n - 1);
    while (edges.size() < m) {
      Vertex u = pick(rng);
      Vertex v = pick(rng);
      if (u == v) continue;
      if (u > v) std::swap(u, v);
      if (seen.insert(static_cast<std::uint64_t>(u) * n + v).second) edges.emplace_back(u, v);
    }
  }
  return Graph::from_edges(n, edges);
}

Graph generate_split(Vertex n, Vertex t, double p, std::uint64_t seed) {
  if (n < 0 || t < 0 || t > n) throw ConfigError("split: need 0 <= t <= n");
  if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("split: need 0 <= p <= 1");
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution coin(p);
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>((n - t) * (t * p + 1)));
  for (Vertex v = t; v < n; ++v) {
    for (Vertex x = 0; x < t; ++x) {
      if (coin(rng)) edges.emplace_back(x, v);
    }
  }
  return Graph::from_edges(n, edges);
}

Graph generate_grid(Vertex rows, Vertex cols) {
  if (rows < 0 || cols < 0) throw ConfigError("grid: dimensions must be non-negative");
  std::vector<Edge> edges;
  for (Vertex r = 0; r < rows; ++r) {
    for (Vertex c = 0; c < cols; ++c) {
      Vertex v = r * cols + c;
      if (c + 1 < cols) edges.emplace_back(v, v + 1);
      if (r + 1 < rows) edges.emplace_back(v, v + cols);
    }
  }
  return Graph::from_edges(rows * cols, edges);
}

}  // namespace nbr
