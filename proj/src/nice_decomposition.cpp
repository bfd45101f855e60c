#include "nbr/nice_decomposition.hpp"

#include <algorithm>
#include <bit>
#include <iterator>
#include <string>

#include "nbr/error.hpp"

namespace nbr {

namespace {

using Mask = std::uint64_t;

constexpr Mask bit(int p) { return Mask{1} << p; }

// Shifts bits at positions >= p up by one, leaving position p clear.
constexpr Mask insert_zero(Mask m, int p) {
  return (m & (bit(p) - 1)) | ((m >> p) << (p + 1));
}

// Drops bit p and shifts the higher bits down.
constexpr Mask remove_bit(Mask m, int p) {
  return (m & (bit(p) - 1)) | ((m >> (p + 1)) << p);
}

int position_in(std::span<const Vertex> bag, Vertex v) {
  return static_cast<int>(std::lower_bound(bag.begin(), bag.end(), v) - bag.begin());
}

class NiceBuilder {
 public:
  explicit NiceBuilder(NiceDecomposition& nd) : nd_(nd) {}

  int leaf() { return add(NodeKind::leaf, {}, -1, -1, -1, -1); }

  int introduce(int child, Vertex v) {
    std::vector<Vertex> bag = nd_.nodes[child].bag;
    const int p = position_in(bag, v);
    bag.insert(bag.begin() + p, v);
    return add(NodeKind::introduce, std::move(bag), v, p, child, -1);
  }

  int forget(int child, Vertex v) {
    std::vector<Vertex> bag = nd_.nodes[child].bag;
    const int p = position_in(bag, v);
    bag.erase(bag.begin() + p);
    return add(NodeKind::forget, std::move(bag), v, p, child, -1);
  }

  int join(int a, int b) {
    return add(NodeKind::join, nd_.nodes[a].bag, -1, -1, a, b);
  }

  // Forget what `target` lacks, then introduce what it adds.
  int morph(int from, std::span<const Vertex> target) {
    std::vector<Vertex> drop, add_in;
    const auto& bag = nd_.nodes[from].bag;
    std::set_difference(bag.begin(), bag.end(), target.begin(), target.end(),
                        std::back_inserter(drop));
    std::set_difference(target.begin(), target.end(), bag.begin(), bag.end(),
                        std::back_inserter(add_in));
    int node = from;
    for (Vertex v : drop) node = forget(node, v);
    for (Vertex v : add_in) node = introduce(node, v);
    return node;
  }

 private:
  int add(NodeKind kind, std::vector<Vertex> bag, Vertex v, int p, int c0, int c1) {
    const int id = static_cast<int>(nd_.nodes.size());
    NiceNode node;
    node.kind = kind;
    node.bag = std::move(bag);
    node.vertex = v;
    node.position = p;
    node.children[0] = c0;
    node.children[1] = c1;
    if (c0 >= 0) nd_.nodes[c0].parent = id;
    if (c1 >= 0) nd_.nodes[c1].parent = id;
    nd_.nodes.push_back(std::move(node));
    return id;
  }

  NiceDecomposition& nd_;
};

}  // namespace

std::vector<int> NiceDecomposition::top_nodes() const {
  std::vector<int> top(num_vertices, -1);
  for (const auto& node : nodes) {
    if (node.kind == NodeKind::forget) top[node.vertex] = node.children[0];
  }
  return top;
}

TreeDecomposition NiceDecomposition::to_tree_decomposition() const {
  TreeDecomposition td;
  td.num_vertices = num_vertices;
  td.bags.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    td.bags.push_back(nodes[i].bag);
    if (nodes[i].parent >= 0) td.tree_edges.emplace_back(static_cast<int>(i), nodes[i].parent);
  }
  return td;
}

NiceDecomposition make_nice(const Graph& g, const TreeDecomposition& td) {
  if (auto report = validate_td(g, td); !report.ok()) {
    throw InvalidDecomposition("invalid tree decomposition: " + report.summary());
  }
  NiceDecomposition nd;
  nd.num_vertices = g.num_vertices();
  nd.width = td.width();
  NiceBuilder build(nd);

  const int num_bags = static_cast<int>(td.bags.size());
  if (num_bags == 0) {
    build.leaf();
    return nd;
  }

  std::vector<std::vector<int>> tree(num_bags);
  for (const auto& [a, b] : td.tree_edges) {
    tree[a].push_back(b);
    tree[b].push_back(a);
  }

  // Iterative post-order from bag 0.
  std::vector<int> parent(num_bags, -1), order;
  order.reserve(num_bags);
  std::vector<std::pair<int, std::size_t>> stack{{0, 0}};
  parent[0] = 0;
  while (!stack.empty()) {
    auto& [b, next] = stack.back();
    if (next < tree[b].size()) {
      int c = tree[b][next++];
      if (parent[c] < 0) {
        parent[c] = b;
        stack.emplace_back(c, 0);
      }
    } else {
      order.push_back(b);
      stack.pop_back();
    }
  }

  std::vector<int> top(num_bags, -1);
  std::vector<std::vector<int>> branches(num_bags);
  for (int b : order) {
    const auto& bag = td.bags[b];
    int node = -1;
    for (int branch : branches[b]) {
      int arrived = build.morph(branch, bag);
      node = node < 0 ? arrived : build.join(node, arrived);
    }
    if (node < 0) node = build.morph(build.leaf(), bag);
    top[b] = node;
    if (b != 0) branches[parent[b]].push_back(node);
  }
  build.morph(top[0], std::span<const Vertex>{});
  return nd;
}

std::string check_nice(const NiceDecomposition& nd) {
  if (nd.nodes.empty()) return "no nodes";
  const auto& root = nd.nodes.back();
  if (!root.bag.empty()) return "root bag is not empty";
  if (root.parent != -1) return "root has a parent";
  std::vector<int> forgets(nd.num_vertices, 0);
  for (int i = 0; i < static_cast<int>(nd.nodes.size()); ++i) {
    const auto& node = nd.nodes[i];
    const std::string where = "node " + std::to_string(i) + ": ";
    if (!std::is_sorted(node.bag.begin(), node.bag.end())) return where + "bag not sorted";
    for (int c : node.children) {
      if (c >= 0 && (c >= i || nd.nodes[c].parent != i)) return where + "bad child link";
    }
    if (i != nd.root() && (node.parent <= i)) return where + "bad parent link";
    const auto* child = node.children[0] >= 0 ? &nd.nodes[node.children[0]] : nullptr;
    switch (node.kind) {
      case NodeKind::leaf:
        if (node.num_children() != 0 || !node.bag.empty()) return where + "leaf must be empty";
        break;
      case NodeKind::introduce: {
        if (node.num_children() != 1 || node.children[1] >= 0) return where + "introduce needs one child";
        auto expected = child->bag;
        if (std::binary_search(expected.begin(), expected.end(), node.vertex)) {
          return where + "introduced vertex already in child bag";
        }
        expected.insert(std::lower_bound(expected.begin(), expected.end(), node.vertex), node.vertex);
        if (expected != node.bag || node.bag[node.position] != node.vertex) {
          return where + "introduce bag mismatch";
        }
        break;
      }
      case NodeKind::forget: {
        if (node.num_children() != 1 || node.children[1] >= 0) return where + "forget needs one child";
        auto expected = child->bag;
        if (node.position < 0 || node.position >= static_cast<int>(expected.size()) ||
            expected[node.position] != node.vertex) {
          return where + "forgotten vertex not in child bag";
        }
        expected.erase(expected.begin() + node.position);
        if (expected != node.bag) return where + "forget bag mismatch";
        ++forgets[node.vertex];
        break;
      }
      case NodeKind::join:
        if (node.num_children() != 2) return where + "join needs two children";
        if (nd.nodes[node.children[0]].bag != node.bag || nd.nodes[node.children[1]].bag != node.bag) {
          return where + "join bags differ";
        }
        break;
    }
  }
  for (Vertex v = 0; v < nd.num_vertices; ++v) {
    if (forgets[v] != 1) {
      return "vertex " + std::to_string(v) + " forgotten " + std::to_string(forgets[v]) + " times";
    }
  }
  return {};
}

std::uint64_t bag_neighbour_mask(const Graph& g, std::span<const Vertex> bag, Vertex v) {
  Mask m = 0;
  for (std::size_t i = 0; i < bag.size(); ++i) {
    if (g.has_edge(v, bag[i])) m |= bit(static_cast<int>(i));
  }
  return m;
}

namespace {

Table past_step(const Graph& g, const NiceDecomposition& nd, int i, std::span<const Table> past) {
  const auto& node = nd.nodes[i];
  Table out(std::size_t{1} << node.bag.size());
  switch (node.kind) {
    case NodeKind::leaf:
      break;
    case NodeKind::introduce: {
      // The new vertex occurs nowhere below, so it has no past neighbours.
      const Table& child = past[node.children[0]];
      for (Mask y = 0; y < out.size(); ++y) out[y] = child[remove_bit(y, node.position)];
      break;
    }
    case NodeKind::forget: {
      const Table& child = past[node.children[0]];
      const Mask adj = bag_neighbour_mask(g, nd.nodes[node.children[0]].bag, node.vertex);
      for (Mask y = 0; y < out.size(); ++y) {
        const Mask wide = insert_zero(y, node.position);
        out[y] = child[wide] + ((wide & adj) != 0);
      }
      break;
    }
    case NodeKind::join: {
      const Table& a = past[node.children[0]];
      const Table& b = past[node.children[1]];
      for (std::size_t y = 0; y < out.size(); ++y) out[y] = a[y] + b[y];
      break;
    }
  }
  return out;
}

// Future table of node c, which must have a parent.
Table future_step(const Graph& g, const NiceDecomposition& nd, int c, std::span<const Table> past,
                  std::span<const Table> future) {
  const auto& node = nd.nodes[c];
  const auto& up = nd.nodes[node.parent];
  const Table& above = future[node.parent];
  Table out(std::size_t{1} << node.bag.size());
  switch (up.kind) {
    case NodeKind::leaf:
      break;
    case NodeKind::introduce: {
      // The introduced vertex lies in this node's future.
      const Mask adj = bag_neighbour_mask(g, node.bag, up.vertex);
      for (Mask y = 0; y < out.size(); ++y) {
        out[y] = above[insert_zero(y, up.position)] + ((y & adj) != 0);
      }
      break;
    }
    case NodeKind::forget: {
      // The forgotten vertex is topmost here, so it has no future neighbours.
      for (Mask y = 0; y < out.size(); ++y) out[y] = above[remove_bit(y, up.position)];
      break;
    }
    case NodeKind::join: {
      const int sibling = up.children[0] == c ? up.children[1] : up.children[0];
      const Table& other = past[sibling];
      for (std::size_t y = 0; y < out.size(); ++y) out[y] = above[y] + other[y];
      break;
    }
  }
  return out;
}

struct BagState {
  std::vector<Mask> adj;     // neighbours inside the bag
  std::vector<Mask> common;  // bag vertices sharing a past neighbour
  std::vector<std::int64_t> reach;  // past vertices within distance 2
};

// Second bottom-up pass. `introduce_past[i]` is N^P_i[N(v) ∩ X_i] at each
// introduce node, `top_future[v]` is N^F_t[N(v) ∩ X_t] at v's top node t.
std::vector<std::int64_t> assemble_sizes(const Graph& g, const NiceDecomposition& nd,
                                         std::span<const Count> introduce_past,
                                         std::span<const Count> top_future) {
  std::vector<std::int64_t> sizes(nd.num_vertices, 0);
  std::vector<BagState> state(nd.nodes.size());

  for (int i = 0; i < static_cast<int>(nd.nodes.size()); ++i) {
    const auto& node = nd.nodes[i];
    switch (node.kind) {
      case NodeKind::leaf:
        break;
      case NodeKind::introduce: {
        BagState s = std::move(state[node.children[0]]);
        const int p = node.position;
        for (auto& m : s.adj) m = insert_zero(m, p);
        for (auto& m : s.common) m = insert_zero(m, p);
        const Mask adj = bag_neighbour_mask(g, node.bag, node.vertex);
        s.adj.insert(s.adj.begin() + p, adj);
        s.common.insert(s.common.begin() + p, 0);
        s.reach.insert(s.reach.begin() + p, introduce_past[i]);
        for (Mask rest = adj; rest; rest &= rest - 1) s.adj[std::countr_zero(rest)] |= bit(p);
        state[i] = std::move(s);
        break;
      }
      case NodeKind::forget: {
        BagState s = std::move(state[node.children[0]]);
        const int p = node.position;
        const Mask self = bit(p);
        const Mask adj = s.adj[p];
        // Bag vertices within distance 2 of the forgotten vertex: direct
        // neighbours, a shared bag neighbour, or a shared past neighbour.
        Mask near = adj | s.common[p];
        for (Mask rest = adj; rest; rest &= rest - 1) near |= s.adj[std::countr_zero(rest)];
        near &= ~self;

        sizes[node.vertex] = 1 + s.reach[p] + std::popcount(near) + top_future[node.vertex];

        for (Mask rest = near; rest; rest &= rest - 1) ++s.reach[std::countr_zero(rest)];
        for (Mask rest = adj; rest; rest &= rest - 1) {
          const int x = std::countr_zero(rest);
          s.common[x] |= adj & ~bit(x);
        }
        s.adj.erase(s.adj.begin() + p);
        s.common.erase(s.common.begin() + p);
        s.reach.erase(s.reach.begin() + p);
        for (auto& m : s.adj) m = remove_bit(m, p);
        for (auto& m : s.common) m = remove_bit(m, p);
        state[i] = std::move(s);
        break;
      }
      case NodeKind::join: {
        BagState s = std::move(state[node.children[0]]);
        BagState other = std::move(state[node.children[1]]);
        for (std::size_t x = 0; x < s.reach.size(); ++x) {
          s.reach[x] += other.reach[x];
          s.common[x] |= other.common[x];
        }
        state[i] = std::move(s);
        break;
      }
    }
  }
  return sizes;
}

SizesResult make_result(std::vector<std::int64_t> sizes, int width) {
  SizesResult result;
  result.radius = 2;
  result.mode = Mode::closed;
  result.backend = "tw";
  result.parameter = width;
  result.sizes = std::move(sizes);
  return result;
}

}  // namespace

std::vector<Table> past_tables(const Graph& g, const NiceDecomposition& nd) {
  std::vector<Table> past(nd.nodes.size());
  for (int i = 0; i < static_cast<int>(nd.nodes.size()); ++i) past[i] = past_step(g, nd, i, past);
  return past;
}

std::vector<Table> future_tables(const Graph& g, const NiceDecomposition& nd,
                                 std::span<const Table> past) {
  std::vector<Table> future(nd.nodes.size());
  if (nd.nodes.empty()) return future;
  future[nd.root()] = Table(std::size_t{1} << nd.nodes[nd.root()].bag.size(), 0);
  for (int i = nd.root() - 1; i >= 0; --i) future[i] = future_step(g, nd, i, past, future);
  return future;
}

SizesResult second_pass(const Graph& g, const NiceDecomposition& nd, std::span<const Table> past,
                        std::span<const Table> future) {
  std::vector<Count> introduce_past(nd.nodes.size(), 0);
  for (int i = 0; i < static_cast<int>(nd.nodes.size()); ++i) {
    const auto& node = nd.nodes[i];
    if (node.kind == NodeKind::introduce) {
      introduce_past[i] = past[i][bag_neighbour_mask(g, node.bag, node.vertex)];
    }
  }
  std::vector<Count> top_future(nd.num_vertices, 0);
  const auto top = nd.top_nodes();
  for (Vertex v = 0; v < nd.num_vertices; ++v) {
    top_future[v] = future[top[v]][bag_neighbour_mask(g, nd.nodes[top[v]].bag, v)];
  }
  return make_result(assemble_sizes(g, nd, introduce_past, top_future), nd.width);
}

SizesResult solve_tw(const Graph& g, const std::optional<TreeDecomposition>& td,
                     const TwOptions& options, TwStats* stats) {
  auto start = std::chrono::steady_clock::now();
  const TreeDecomposition decomposition = td ? *td : greedy_td(g, options.heuristic);
  if (decomposition.width() > options.max_width) {
    throw CapExceeded("decomposition width " + std::to_string(decomposition.width()) +
                      " exceeds the cap of " + std::to_string(options.max_width) +
                      "; supply a narrower decomposition, raise the cap, or use the vc or bfs "
                      "backend");
  }
  const NiceDecomposition nd = make_nice(g, decomposition);
  const int num_nodes = static_cast<int>(nd.nodes.size());

  std::uint64_t live = 0, peak = 0;
  auto hold = [&](const Table& t) { live += t.size(); peak = std::max(peak, live); };
  auto drop = [&](Table& t) { live -= t.size(); Table().swap(t); };
  auto is_join_child = [&](int i) {
    const int p = nd.nodes[i].parent;
    return p >= 0 && nd.nodes[p].kind == NodeKind::join;
  };

  // Bottom-up. Join children keep their past tables for the sibling's
  // future; everything else is released once the parent exists.
  std::vector<Table> past(num_nodes);
  std::vector<Count> introduce_past(num_nodes, 0);
  for (int i = 0; i < num_nodes; ++i) {
    const auto& node = nd.nodes[i];
    past[i] = past_step(g, nd, i, past);
    hold(past[i]);
    if (node.kind == NodeKind::introduce) {
      introduce_past[i] = past[i][bag_neighbour_mask(g, node.bag, node.vertex)];
    }
    for (int c : node.children) {
      if (c >= 0 && !is_join_child(c)) drop(past[c]);
    }
  }
  drop(past[nd.root()]);

  // Top-down. A parent's future is released after its last child is done.
  std::vector<Table> future(num_nodes);
  std::vector<int> pending(num_nodes);
  for (int i = 0; i < num_nodes; ++i) pending[i] = nd.nodes[i].num_children();
  std::vector<Count> top_future(nd.num_vertices, 0);
  future[nd.root()] = Table(1, 0);
  hold(future[nd.root()]);
  for (int i = num_nodes - 1; i >= 0; --i) {
    const auto& node = nd.nodes[i];
    if (i != nd.root()) {
      future[i] = future_step(g, nd, i, past, future);
      hold(future[i]);
      const auto& up = nd.nodes[node.parent];
      if (up.kind == NodeKind::forget) {
        top_future[up.vertex] = future[i][bag_neighbour_mask(g, node.bag, up.vertex)];
      }
      if (--pending[node.parent] == 0) {
        drop(future[node.parent]);
        if (up.kind == NodeKind::join) {
          drop(past[up.children[0]]);
          drop(past[up.children[1]]);
        }
      }
    }
    if (pending[i] == 0) drop(future[i]);
  }

  SizesResult result = make_result(assemble_sizes(g, nd, introduce_past, top_future), nd.width);
  if (stats) stats->peak_table_entries = peak;
  result.elapsed = std::chrono::steady_clock::now() - start;
  return result;
}

}  // namespace nbr
