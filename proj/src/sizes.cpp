#include "nbr/sizes.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>

#include "nbr/error.hpp"

namespace nbr {

Mode parse_mode(std::string_view name) {
  if (name == "closed") return Mode::closed;
  if (name == "open") return Mode::open;
  throw ConfigError("unknown mode '" + std::string(name) + "' (expected closed or open)");
}

std::string_view to_string(Mode mode) { return mode == Mode::closed ? "closed" : "open"; }

unsigned worker_count() {
  if (const char* env = std::getenv("NBR_THREADS")) {
    char* end = nullptr;
    long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0) return static_cast<unsigned>(value);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

// Scratch for one worker. `stamp` marks vertices seen by the current source,
// so nothing is cleared between sources.
struct BfsScratch {
  explicit BfsScratch(Vertex n) : stamp(n, -1), queue(n) {}
  std::vector<Vertex> stamp;
  std::vector<Vertex> queue;
};

// Returns (|N^r[source]|, |N^{r-1}[source]|).
std::pair<std::int64_t, std::int64_t> truncated_bfs(const Graph& g, Vertex source, int radius,
                                                    BfsScratch& s) {
  s.stamp[source] = source;
  s.queue[0] = source;
  std::size_t head = 0;
  std::size_t tail = 1;
  std::size_t inner = 1;
  for (int depth = 0; depth < radius; ++depth) {
    inner = tail;
    if (head == tail) break;
    for (const std::size_t level_end = tail; head < level_end; ++head) {
      for (Vertex w : g.neighbors(s.queue[head])) {
        if (s.stamp[w] != source) {
          s.stamp[w] = source;
          s.queue[tail++] = w;
        }
      }
    }
  }
  return {static_cast<std::int64_t>(tail), static_cast<std::int64_t>(inner)};
}

}  // namespace

SizesResult bfs_sizes(const Graph& g, int radius, Mode mode) {
  if (radius < 1) throw ConfigError("radius must be at least 1");
  auto start = std::chrono::steady_clock::now();
  const Vertex n = g.num_vertices();

  SizesResult result;
  result.radius = radius;
  result.mode = mode;
  result.backend = "bfs";
  result.sizes.assign(n, 0);

  auto work = [&](std::atomic<Vertex>& next) {
    BfsScratch scratch(n);
    constexpr Vertex kChunk = 64;
    for (Vertex lo = next.fetch_add(kChunk); lo < n; lo = next.fetch_add(kChunk)) {
      for (Vertex v = lo; v < std::min(n, lo + kChunk); ++v) {
        auto [within, inner] = truncated_bfs(g, v, radius, scratch);
        result.sizes[v] = mode == Mode::closed ? within : within - inner;
      }
    }
  };

  std::atomic<Vertex> next{0};
  unsigned workers = std::min<unsigned>(worker_count(), std::max<Vertex>(1, n / 256));
  if (workers <= 1) {
    work(next);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back([&] { work(next); });
  }

  result.elapsed = std::chrono::steady_clock::now() - start;
  return result;
}

SizesResult open_from_closed(const SizesResult& closed, const SizesResult& closed_previous) {
  if (closed.mode != Mode::closed || closed_previous.mode != Mode::closed) {
    throw ConfigError("open_from_closed expects two closed-mode results");
  }
  if (closed.sizes.size() != closed_previous.sizes.size()) {
    throw ConfigError("open_from_closed: vertex counts differ (" +
                      std::to_string(closed.sizes.size()) + " vs " +
                      std::to_string(closed_previous.sizes.size()) + ")");
  }
  if (closed_previous.radius != closed.radius - 1) {
    throw ConfigError("open_from_closed: radii must be r and r-1, got " +
                      std::to_string(closed.radius) + " and " +
                      std::to_string(closed_previous.radius));
  }
  SizesResult out = closed;
  out.mode = Mode::open;
  for (std::size_t v = 0; v < out.sizes.size(); ++v) out.sizes[v] -= closed_previous.sizes[v];
  out.elapsed += closed_previous.elapsed;
  return out;
}

SizesResult all_ones(Vertex n) {
  SizesResult r;
  r.radius = 0;
  r.mode = Mode::closed;
  r.sizes.assign(n, 1);
  r.backend = "trivial";
  return r;
}

std::uint64_t checksum(const std::vector<std::int64_t>& sizes) {
  std::uint64_t h = 1469598103934665603ull;
  for (std::int64_t s : sizes) {
    auto u = static_cast<std::uint64_t>(s);
    for (int b = 0; b < 8; ++b) {
      h ^= (u >> (8 * b)) & 0xff;
      h *= 1099511628211ull;
    }
  }
  return h;
}

}  // namespace nbr
