#include "nbr/vertex_cover.hpp"

#include <algorithm>
#include <bit>
#include <queue>
#include <string>
#include <unordered_map>

#include "nbr/error.hpp"

namespace nbr {

void check_vertex_cover(const Graph& g, std::span<const Vertex> cover) {
  std::vector<char> in(g.num_vertices(), 0);
  for (Vertex v : cover) {
    if (v < 0 || v >= g.num_vertices()) {
      throw InvalidCover("cover vertex " + std::to_string(v) + " out of range");
    }
    in[v] = 1;
  }
  for (const auto& [u, v] : g.edges()) {
    if (!in[u] && !in[v]) {
      throw InvalidCover("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                         ") is not covered");
    }
  }
}

namespace {

// Branch and bound over a shrinking copy of the graph. Removed vertices are
// undone in LIFO order, so the live neighbour set of a vertex at restore time
// equals the one at removal time.
class CoverSearch {
 public:
  CoverSearch(const Graph& g, const CoverSearchOptions& options)
      : g_(g), options_(options), removed_(g.num_vertices(), 0), deg_(g.num_vertices(), 0) {
    for (Vertex v = 0; v < g.num_vertices(); ++v) deg_[v] = static_cast<Vertex>(g.degree(v));
    live_edges_ = g.num_edges();
  }

  std::vector<Vertex> run() {
    best_ = greedy_cover();
    search();
    std::sort(best_.begin(), best_.end());
    return best_;
  }

 private:
  // Max-degree greedy with a lazy heap; the initial upper bound.
  std::vector<Vertex> greedy_cover() const {
    std::vector<Vertex> deg(deg_);
    std::vector<char> taken(g_.num_vertices(), 0);
    std::priority_queue<std::pair<Vertex, Vertex>> heap;
    for (Vertex v = 0; v < g_.num_vertices(); ++v) {
      if (deg[v] > 0) heap.emplace(deg[v], v);
    }
    std::vector<Vertex> cover;
    while (!heap.empty()) {
      auto [d, v] = heap.top();
      heap.pop();
      if (taken[v] || d != deg[v] || d == 0) continue;
      taken[v] = 1;
      cover.push_back(v);
      for (Vertex u : g_.neighbors(v)) {
        if (!taken[u] && --deg[u] > 0) heap.emplace(deg[u], u);
      }
    }
    return cover;
  }

  void remove(Vertex v) {
    removed_[v] = 1;
    log_.push_back(v);
    for (Vertex u : g_.neighbors(v)) {
      if (!removed_[u]) {
        --deg_[u];
        --live_edges_;
      }
    }
  }

  void take(Vertex v) {
    cover_.push_back(v);
    remove(v);
  }

  void undo_to(std::size_t log_mark, std::size_t cover_mark) {
    while (log_.size() > log_mark) {
      Vertex v = log_.back();
      log_.pop_back();
      removed_[v] = 0;
      for (Vertex u : g_.neighbors(v)) {
        if (!removed_[u]) {
          ++deg_[u];
          ++live_edges_;
        }
      }
    }
    cover_.resize(cover_mark);
  }

  // Size of a greedy maximal matching on the live graph; a lower bound on
  // the cover still needed.
  std::size_t matching_bound() {
    std::vector<Vertex>& matched = scratch_;
    matched.clear();
    std::size_t size = 0;
    for (Vertex v = 0; v < g_.num_vertices(); ++v) {
      if (removed_[v] || deg_[v] == 0) continue;
      for (Vertex u : g_.neighbors(v)) {
        if (!removed_[u]) {
          removed_[v] = removed_[u] = 2;
          matched.push_back(v);
          matched.push_back(u);
          ++size;
          break;
        }
      }
    }
    for (Vertex v : matched) removed_[v] = 0;
    return size;
  }

  // Forced moves: a degree-1 vertex's neighbour can always be taken, and a
  // vertex of degree above the remaining budget must be taken. Returns false
  // when the budget is exhausted.
  bool reduce() {
    for (bool changed = true; changed;) {
      changed = false;
      for (Vertex v = 0; v < g_.num_vertices(); ++v) {
        if (removed_[v] || deg_[v] == 0) continue;
        const long budget = static_cast<long>(best_.size()) - 1 - static_cast<long>(cover_.size());
        if (budget <= 0) return false;
        if (deg_[v] > budget) {
          take(v);
          changed = true;
        } else if (deg_[v] == 1) {
          for (Vertex u : g_.neighbors(v)) {
            if (!removed_[u]) {
              take(u);
              break;
            }
          }
          changed = true;
        }
      }
    }
    return true;
  }

  void search() {
    if (++nodes_ > options_.node_budget) {
      throw CapExceeded("vertex cover search exceeded its budget of " +
                        std::to_string(options_.node_budget) + " nodes; supply a cover instead");
    }
    const std::size_t log_mark = log_.size();
    const std::size_t cover_mark = cover_.size();

    if (live_edges_ == 0) {
      if (cover_.size() < best_.size()) best_ = cover_;
      return;
    }
    if (!reduce() || live_edges_ == 0) {
      if (live_edges_ == 0 && cover_.size() < best_.size()) best_ = cover_;
      undo_to(log_mark, cover_mark);
      return;
    }
    if (cover_.size() + matching_bound() >= best_.size()) {
      undo_to(log_mark, cover_mark);
      return;
    }

    Vertex pivot = -1;
    for (Vertex v = 0; v < g_.num_vertices(); ++v) {
      if (!removed_[v] && (pivot < 0 || deg_[v] > deg_[pivot])) pivot = v;
    }

    // Either the pivot is in the cover, or all of its live neighbours are.
    const std::size_t branch_log = log_.size();
    const std::size_t branch_cover = cover_.size();
    take(pivot);
    search();
    undo_to(branch_log, branch_cover);

    if (cover_.size() + static_cast<std::size_t>(deg_[pivot]) < best_.size()) {
      std::vector<Vertex> nb;
      for (Vertex u : g_.neighbors(pivot)) {
        if (!removed_[u]) nb.push_back(u);
      }
      for (Vertex u : nb) take(u);
      search();
    }
    undo_to(log_mark, cover_mark);
  }

  const Graph& g_;
  CoverSearchOptions options_;
  std::vector<char> removed_;
  std::vector<Vertex> deg_;
  std::size_t live_edges_ = 0;
  std::vector<Vertex> log_;
  std::vector<Vertex> cover_;
  std::vector<Vertex> best_;
  std::vector<Vertex> scratch_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

std::vector<Vertex> find_vertex_cover(const Graph& g,
                                      std::optional<std::span<const Vertex>> hint,
                                      const CoverSearchOptions& options) {
  if (hint) {
    check_vertex_cover(g, *hint);
    return {hint->begin(), hint->end()};
  }
  return CoverSearch(g, options).run();
}

VertexCoverPartition partition(const Graph& g, std::span<const Vertex> cover) {
  check_vertex_cover(g, cover);
  VertexCoverPartition part;
  part.cover.assign(cover.begin(), cover.end());
  part.cover_bit.assign(g.num_vertices(), -1);
  for (std::size_t i = 0; i < cover.size(); ++i) {
    if (part.cover_bit[cover[i]] >= 0) {
      throw InvalidCover("vertex " + std::to_string(cover[i]) + " repeated in cover");
    }
    part.cover_bit[cover[i]] = static_cast<std::int32_t>(i);
  }
  const auto t = cover.size();
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    if (part.in_cover(v)) continue;
    (2 * g.degree(v) <= t ? part.low : part.high).push_back(v);
  }
  return part;
}

std::vector<std::int64_t> cover_sizes(const Graph& g, const VertexCoverPartition& part) {
  std::vector<Vertex> stamp(g.num_vertices(), -1);
  std::vector<std::int64_t> out;
  out.reserve(part.cover.size());
  for (Vertex x : part.cover) {
    stamp[x] = x;
    std::int64_t count = 1;
    for (Vertex y : g.neighbors(x)) {
      if (stamp[y] != x) {
        stamp[y] = x;
        ++count;
      }
    }
    for (Vertex y : g.neighbors(x)) {
      for (Vertex z : g.neighbors(y)) {
        if (stamp[z] != x) {
          stamp[z] = x;
          ++count;
        }
      }
    }
    out.push_back(count);
  }
  return out;
}

SetMask cover_neighbourhood(const Graph& g, const VertexCoverPartition& part, Vertex v) {
  SetMask mask = 0;
  for (Vertex y : g.neighbors(v)) {
    if (part.in_cover(y)) mask |= SetMask{1} << part.cover_bit[y];
  }
  return mask;
}

std::vector<SetMask> cover_reach_masks(const Graph& g, const VertexCoverPartition& part) {
  if (part.t() > kMaxUniverse) {
    throw CapExceeded("cover of size " + std::to_string(part.t()) + " exceeds " +
                      std::to_string(kMaxUniverse));
  }
  const Vertex n = g.num_vertices();
  std::vector<SetMask> adj_cover(n);
  for (Vertex v = 0; v < n; ++v) adj_cover[v] = cover_neighbourhood(g, part, v);

  std::vector<SetMask> reach(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    if (part.in_cover(v)) continue;
    // Every neighbour of v is a cover vertex and every length-2 path from v
    // has its middle in N(v).
    SetMask mask = adj_cover[v];
    for (Vertex y : g.neighbors(v)) mask |= adj_cover[y];
    reach[v] = mask;
  }
  return reach;
}

std::vector<std::int64_t> cover_to_independent_counts(const Graph& g,
                                                      const VertexCoverPartition& part) {
  auto reach = cover_reach_masks(g, part);
  std::vector<std::int64_t> out(reach.size());
  for (std::size_t v = 0; v < reach.size(); ++v) out[v] = std::popcount(reach[v]);
  return out;
}

CoverFamilies build_families(const Graph& g, const VertexCoverPartition& part) {
  if (part.t() > kMaxUniverse) {
    throw CapExceeded("cover of size " + std::to_string(part.t()) +
                      " does not fit a 64-bit set universe");
  }
  const int t = part.t();
  const SetMask all = t == kMaxUniverse ? ~SetMask{0} : (SetMask{1} << t) - 1;
  std::vector<std::pair<SetMask, Weight>> low, high;
  low.reserve(part.low.size());
  high.reserve(part.high.size());
  for (Vertex v : part.low) low.emplace_back(cover_neighbourhood(g, part, v), 1);
  for (Vertex u : part.high) high.emplace_back(all & ~cover_neighbourhood(g, part, u), 1);
  return {WeightedSetFamily::build(low, t), WeightedSetFamily::build(high, t)};
}

namespace {

// Distinct masks in first-seen order plus the index of each.
struct DistinctMasks {
  std::vector<SetMask> masks;
  std::unordered_map<SetMask, std::size_t> index;

  std::size_t add(SetMask m) {
    auto [it, fresh] = index.emplace(m, masks.size());
    if (fresh) masks.push_back(m);
    return it->second;
  }
};

}  // namespace

SizesResult solve_vc(const Graph& g, std::optional<std::span<const Vertex>> hint,
                     const VcOptions& options) {
  auto start = std::chrono::steady_clock::now();
  const auto cover = find_vertex_cover(g, hint, options.search);
  const int cap = std::min(options.max_cover, kMaxUniverse);
  if (static_cast<int>(cover.size()) > cap) {
    throw CapExceeded("vertex cover of size " + std::to_string(cover.size()) +
                      " exceeds the cap of " + std::to_string(cap));
  }
  const auto part = partition(g, cover);
  const auto families = build_families(g, part);
  const auto reach = cover_reach_masks(g, part);
  const SetMask all = part.t() == kMaxUniverse ? ~SetMask{0} : (SetMask{1} << part.t()) - 1;

  // Low-side queries are N(v) for v in I_l, high-side queries are X \ N(u) for
  // u in I_h; both are answered once per distinct mask.
  DistinctMasks low_queries, high_queries;
  std::vector<std::size_t> slot(g.num_vertices());
  for (Vertex v : part.low) slot[v] = low_queries.add(cover_neighbourhood(g, part, v));
  for (Vertex u : part.high) slot[u] = high_queries.add(all & ~cover_neighbourhood(g, part, u));

  const auto low_meets_low = intersect_weights(families.low, low_queries.masks, options.strategy);
  const auto high_avoids_low = superset_weights(families.high, low_queries.masks, options.strategy);
  const auto low_avoids_high = subset_weights(families.low, high_queries.masks, options.strategy);

  const auto n_low = static_cast<std::int64_t>(part.low.size());
  const auto n_high = static_cast<std::int64_t>(part.high.size());

  SizesResult result;
  result.radius = 2;
  result.mode = Mode::closed;
  result.backend = "vc";
  result.parameter = part.t();
  result.sizes.assign(g.num_vertices(), 0);

  const auto on_cover = cover_sizes(g, part);
  for (int i = 0; i < part.t(); ++i) result.sizes[part.cover[i]] = on_cover[i];

  for (Vertex v : part.low) {
    const std::size_t q = slot[v];
    // An isolated vertex meets nothing, itself included.
    const std::int64_t self = g.degree(v) == 0 ? 1 : 0;
    result.sizes[v] = std::popcount(reach[v]) + low_meets_low[q] + self + n_high -
                      high_avoids_low[q];
  }
  for (Vertex u : part.high) {
    result.sizes[u] = std::popcount(reach[u]) + n_high + n_low - low_avoids_high[slot[u]];
  }

  result.elapsed = std::chrono::steady_clock::now() - start;
  return result;
}

}  // namespace nbr
