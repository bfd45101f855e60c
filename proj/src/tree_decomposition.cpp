#include "nbr/tree_decomposition.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <queue>
#include <sstream>
#include <unordered_set>

#include "nbr/error.hpp"

namespace nbr {

int TreeDecomposition::width() const {
  std::size_t largest = 0;
  for (const auto& bag : bags) largest = std::max(largest, bag.size());
  return static_cast<int>(largest) - 1;
}

TreeDecomposition parse_td(std::istream& in) {
  TreeDecomposition td;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  long declared_width_plus_one = 0;
  std::vector<char> seen_bag;

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head == "c") continue;

    if (!have_header) {
      long bags = 0, n = 0;
      std::string td_tag, rest;
      if (head != "s" || !(ls >> td_tag >> bags >> declared_width_plus_one >> n) ||
          td_tag != "td" || bags < 0 || n < 0 || (ls >> rest)) {
        throw ParseError("expected header 's td <bags> <width+1> <n>'", lineno);
      }
      td.num_vertices = static_cast<Vertex>(n);
      td.bags.resize(static_cast<std::size_t>(bags));
      seen_bag.assign(static_cast<std::size_t>(bags), 0);
      have_header = true;
      continue;
    }

    if (head == "b") {
      long id = 0;
      if (!(ls >> id)) throw ParseError("expected bag id", lineno);
      if (id < 1 || id > static_cast<long>(td.bags.size())) {
        throw ParseError("bag index " + std::to_string(id) + " out of range", lineno);
      }
      if (seen_bag[id - 1]) throw ParseError("bag " + std::to_string(id) + " declared twice", lineno);
      seen_bag[id - 1] = 1;
      auto& bag = td.bags[id - 1];
      long v = 0;
      while (ls >> v) {
        if (v < 1 || v > td.num_vertices) {
          throw ParseError("vertex " + std::to_string(v) + " out of range", lineno);
        }
        bag.push_back(static_cast<Vertex>(v - 1));
      }
      if (!ls.eof()) throw ParseError("malformed bag line", lineno);
      std::sort(bag.begin(), bag.end());
      bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
      continue;
    }

    std::istringstream es(line);
    long a = 0, b = 0;
    std::string rest;
    if (!(es >> a >> b) || (es >> rest)) throw ParseError("expected tree edge 'i j'", lineno);
    if (a < 1 || b < 1 || a > static_cast<long>(td.bags.size()) ||
        b > static_cast<long>(td.bags.size())) {
      throw ParseError("tree edge references a bag index out of range", lineno);
    }
    td.tree_edges.emplace_back(static_cast<int>(a - 1), static_cast<int>(b - 1));
  }
  if (!have_header) throw ParseError("missing 's td' header", lineno);

  for (std::size_t i = 0; i < seen_bag.size(); ++i) {
    if (!seen_bag[i]) td.warnings.push_back("bag " + std::to_string(i + 1) + " missing; treated as empty");
  }
  if (declared_width_plus_one != td.width() + 1) {
    td.warnings.push_back("declared largest bag size " + std::to_string(declared_width_plus_one) +
                          " differs from actual " + std::to_string(td.width() + 1) +
                          "; using actual width " + std::to_string(td.width()));
  }
  return td;
}

TreeDecomposition parse_td(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_td(in);
}

void write_td(std::ostream& out, const TreeDecomposition& td) {
  out << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << td.num_vertices << '\n';
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    out << "b " << i + 1;
    for (Vertex v : td.bags[i]) out << ' ' << v + 1;
    out << '\n';
  }
  for (const auto& [a, b] : td.tree_edges) out << a + 1 << ' ' << b + 1 << '\n';
}

std::string TdReport::summary() const {
  std::string s;
  for (const auto& v : violations) {
    if (!s.empty()) s += "; ";
    s += v;
  }
  return s.empty() ? "ok" : s;
}

namespace {

int find_root(std::vector<int>& parent, int x) {
  while (parent[x] != x) x = parent[x] = parent[parent[x]];
  return x;
}

}  // namespace

TdReport validate_td(const Graph& g, const TreeDecomposition& td) {
  TdReport report;
  const Vertex n = g.num_vertices();
  const int num_bags = static_cast<int>(td.bags.size());

  if (td.num_vertices != n) {
    report.violations.push_back("decomposition is for " + std::to_string(td.num_vertices) +
                                " vertices, graph has " + std::to_string(n));
  }
  for (int b = 0; b < num_bags; ++b) {
    for (Vertex v : td.bags[b]) {
      if (v < 0 || v >= n) {
        report.violations.push_back("bag " + std::to_string(b) + " holds vertex " +
                                    std::to_string(v) + " outside the graph");
        return report;
      }
    }
    if (!std::is_sorted(td.bags[b].begin(), td.bags[b].end()) ||
        std::adjacent_find(td.bags[b].begin(), td.bags[b].end()) != td.bags[b].end()) {
      report.violations.push_back("bag " + std::to_string(b) + " is not a sorted set");
      return report;
    }
  }

  // Tree shape.
  bool tree_ok = true;
  if (num_bags == 0) {
    if (n > 0) report.violations.push_back("decomposition has no bags");
    return report;
  }
  if (static_cast<int>(td.tree_edges.size()) != num_bags - 1) {
    report.violations.push_back("tree has " + std::to_string(td.tree_edges.size()) +
                                " edges for " + std::to_string(num_bags) + " bags");
    tree_ok = false;
  }
  std::vector<int> uf(num_bags);
  std::iota(uf.begin(), uf.end(), 0);
  for (const auto& [a, b] : td.tree_edges) {
    if (a < 0 || b < 0 || a >= num_bags || b >= num_bags) {
      report.violations.push_back("tree edge references a missing bag");
      return report;
    }
    int ra = find_root(uf, a), rb = find_root(uf, b);
    if (ra == rb) {
      if (tree_ok) {
        report.violations.push_back("tree edge (" + std::to_string(a) + ", " + std::to_string(b) +
                                    ") closes a cycle");
      }
      tree_ok = false;
    }
    uf[ra] = rb;
  }
  if (tree_ok) {
    for (int b = 1; b < num_bags; ++b) {
      if (find_root(uf, b) != find_root(uf, 0)) {
        report.violations.push_back("bag " + std::to_string(b) + " is not connected to bag 0");
        tree_ok = false;
        break;
      }
    }
  }

  // Vertex coverage.
  std::vector<std::vector<int>> occurs(n);
  for (int b = 0; b < num_bags; ++b) {
    for (Vertex v : td.bags[b]) occurs[v].push_back(b);
  }
  for (Vertex v = 0; v < n; ++v) {
    if (occurs[v].empty()) {
      report.violations.push_back("vertex " + std::to_string(v) + " is in no bag");
      break;
    }
  }

  // Edge coverage.
  for (const auto& [u, v] : g.edges()) {
    const auto& small = occurs[u].size() < occurs[v].size() ? occurs[u] : occurs[v];
    const Vertex other = occurs[u].size() < occurs[v].size() ? v : u;
    bool covered = std::any_of(small.begin(), small.end(), [&](int b) {
      return std::binary_search(td.bags[b].begin(), td.bags[b].end(), other);
    });
    if (!covered) {
      report.violations.push_back("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                                  ") is in no bag");
      break;
    }
  }

  // Occurrence connectivity: in a tree, the bags holding v induce a subtree
  // exactly when they span |occurs[v]| - 1 tree edges.
  if (tree_ok) {
    std::vector<std::size_t> inner_edges(n, 0);
    std::vector<Vertex> common;
    for (const auto& [a, b] : td.tree_edges) {
      common.clear();
      std::set_intersection(td.bags[a].begin(), td.bags[a].end(), td.bags[b].begin(),
                            td.bags[b].end(), std::back_inserter(common));
      for (Vertex v : common) ++inner_edges[v];
    }
    for (Vertex v = 0; v < n; ++v) {
      if (!occurs[v].empty() && inner_edges[v] + 1 != occurs[v].size()) {
        report.violations.push_back("bags containing vertex " + std::to_string(v) +
                                    " are not connected in the tree");
        break;
      }
    }
  }
  return report;
}

TreeDecomposition greedy_td(const Graph& g, EliminationStrategy strategy) {
  const Vertex n = g.num_vertices();
  TreeDecomposition td;
  td.num_vertices = n;
  if (n == 0) {
    td.bags.emplace_back();
    return td;
  }

  std::vector<std::unordered_set<Vertex>> adj(n);
  for (Vertex v = 0; v < n; ++v) {
    auto nb = g.neighbors(v);
    adj[v].insert(nb.begin(), nb.end());
  }

  auto fill_in = [&](Vertex v) {
    std::vector<Vertex> nb(adj[v].begin(), adj[v].end());
    long missing = 0;
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (!adj[nb[i]].count(nb[j])) ++missing;
      }
    }
    return missing;
  };
  auto score = [&](Vertex v) -> std::pair<long, long> {
    long deg = static_cast<long>(adj[v].size());
    return strategy == EliminationStrategy::min_fill ? std::pair{fill_in(v), deg}
                                                     : std::pair{deg, 0L};
  };

  using Entry = std::pair<std::pair<long, long>, Vertex>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  std::vector<std::pair<long, long>> current(n);
  for (Vertex v = 0; v < n; ++v) {
    current[v] = score(v);
    heap.emplace(current[v], v);
  }

  // A min-fill score costs O(deg^2). Touched vertices above this degree are
  // only marked stale and re-scored once they reach the top of the heap.
  constexpr std::size_t kEagerDegree = 64;
  std::vector<char> stale(n, 0);
  std::vector<char> eliminated(n, 0);
  std::vector<Vertex> order;
  order.reserve(n);
  std::vector<int> position(n, -1);
  td.bags.resize(n);

  while (!heap.empty()) {
    auto [key, v] = heap.top();
    heap.pop();
    if (eliminated[v] || key != current[v]) continue;
    if (stale[v]) {
      stale[v] = 0;
      auto fresh = score(v);
      if (fresh != current[v]) {
        current[v] = fresh;
        heap.emplace(fresh, v);
        continue;
      }
    }
    eliminated[v] = 1;
    position[v] = static_cast<int>(order.size());
    order.push_back(v);

    std::vector<Vertex> nb(adj[v].begin(), adj[v].end());
    std::sort(nb.begin(), nb.end());
    auto& bag = td.bags[position[v]];
    bag = nb;
    bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);

    for (Vertex u : nb) adj[u].erase(v);
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (adj[nb[i]].insert(nb[j]).second) adj[nb[j]].insert(nb[i]);
      }
    }

    std::unordered_set<Vertex> touched(nb.begin(), nb.end());
    if (strategy == EliminationStrategy::min_fill) {
      for (Vertex u : nb) touched.insert(adj[u].begin(), adj[u].end());
    }
    for (Vertex u : touched) {
      if (eliminated[u]) continue;
      if (strategy == EliminationStrategy::min_fill && adj[u].size() > kEagerDegree) {
        stale[u] = 1;
        continue;
      }
      auto s = score(u);
      if (s != current[u]) {
        current[u] = s;
        heap.emplace(s, u);
      }
    }
  }

  // Bag i hangs below the bag of its earliest-eliminated later neighbour;
  // bags without one are chained together.
  int previous_root = -1;
  for (int i = 0; i < n; ++i) {
    int parent = -1;
    for (Vertex u : td.bags[i]) {
      if (position[u] > i && (parent < 0 || position[u] < parent)) parent = position[u];
    }
    if (parent >= 0) {
      td.tree_edges.emplace_back(i, parent);
    } else {
      if (previous_root >= 0) td.tree_edges.emplace_back(previous_root, i);
      previous_root = i;
    }
  }
  return td;
}

TreeDecomposition grid_path_decomposition(Vertex rows, Vertex cols) {
  TreeDecomposition td;
  const Vertex n = rows * cols;
  td.num_vertices = n;
  if (n == 0) {
    td.bags.emplace_back();
    return td;
  }
  const bool by_column = rows <= cols;
  const Vertex window = by_column ? rows : cols;
  auto vertex_at = [&](Vertex k) {
    return by_column ? (k % rows) * cols + k / rows : k;
  };
  const Vertex count = std::max<Vertex>(1, n - window);
  for (Vertex k = 0; k < count; ++k) {
    std::vector<Vertex> bag;
    for (Vertex j = k; j <= std::min(k + window, n - 1); ++j) bag.push_back(vertex_at(j));
    std::sort(bag.begin(), bag.end());
    td.bags.push_back(std::move(bag));
    if (k > 0) td.tree_edges.emplace_back(k - 1, k);
  }
  return td;
}

}  // namespace nbr
