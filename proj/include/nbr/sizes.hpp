#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "nbr/graph.hpp"

namespace nbr {

enum class Mode { closed, open };

Mode parse_mode(std::string_view name);
std::string_view to_string(Mode mode);

/// Per-vertex neighbourhood sizes for one radius.
///
/// closed: sizes[v] = |{u : dist(u, v) <= r}|, always in [1, n].
/// open:   sizes[v] = |{u : dist(u, v) == r}|, always in [0, n - 1].
struct SizesResult {
  int radius = 1;
  Mode mode = Mode::closed;
  std::vector<std::int64_t> sizes;
  std::string backend;
  /// Cover size for "vc", decomposition width for "tw", -1 otherwise.
  int parameter = -1;
  std::chrono::nanoseconds elapsed{0};
};

/// Truncated BFS from every vertex; the reference every other backend is
/// checked against. Parallel over sources (see worker_count()).
SizesResult bfs_sizes(const Graph& g, int radius, Mode mode);

/// Open sizes at radius r from closed sizes at r and r - 1. For r = 1 pass
/// all_ones(n) as `closed_previous`.
SizesResult open_from_closed(const SizesResult& closed, const SizesResult& closed_previous);

/// Closed sizes at radius 0: every vertex sees only itself.
SizesResult all_ones(Vertex n);

/// FNV-1a over the little-endian bytes of the sizes vector.
std::uint64_t checksum(const std::vector<std::int64_t>& sizes);

/// Number of worker threads: NBR_THREADS if set and positive, otherwise the
/// hardware concurrency (at least 1).
unsigned worker_count();

}  // namespace nbr
