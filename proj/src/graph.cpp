#include "nbr/graph.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>

#include "nbr/error.hpp"

namespace nbr {

Graph Graph::from_edges(Vertex n, std::span<const Edge> edges) {
  if (n < 0) throw GraphError("negative vertex count");
  std::vector<std::size_t> degree(static_cast<std::size_t>(n) + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw GraphError("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                       ") has an endpoint outside [0, " + std::to_string(n) + ")");
    }
    if (u == v) throw GraphError("self-loop at vertex " + std::to_string(u));
    ++degree[u];
    ++degree[v];
  }

  Graph g;
  g.n_ = n;
  g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
  for (Vertex v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + degree[v];
  g.targets_.resize(g.offsets_[n]);
  std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    g.targets_[fill[u]++] = v;
    g.targets_[fill[v]++] = u;
  }
  for (Vertex v = 0; v < n; ++v) {
    auto first = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto last = g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(first, last);
    auto dup = std::adjacent_find(first, last);
    if (dup != last) {
      throw GraphError("duplicate edge (" + std::to_string(std::min(v, *dup)) + ", " +
                       std::to_string(std::max(v, *dup)) + ")");
    }
  }
  return g;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  auto nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(num_edges());
  for (Vertex u = 0; u < n_; ++u) {
    for (Vertex v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

GraphFormat parse_graph_format(std::string_view name) {
  if (name == "edge-list") return GraphFormat::edge_list;
  if (name == "pace-gr") return GraphFormat::pace_gr;
  throw ConfigError("unknown graph format '" + std::string(name) +
                    "' (expected edge-list or pace-gr)");
}

namespace {

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

// Fills `out` from the line; anything left over is an error.
template <typename Int>
bool read_ints(const std::string& line, std::span<Int> out) {
  std::istringstream ls(line);
  for (auto& x : out) {
    if (!(ls >> x)) return false;
  }
  std::string rest;
  return !(ls >> rest);
}

}  // namespace

Graph parse_graph(std::istream& in, GraphFormat format) {
  const char comment = format == GraphFormat::edge_list ? '#' : 'c';
  const long offset = format == GraphFormat::pace_gr ? 1 : 0;

  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  long n = 0;
  long m = 0;
  std::size_t header_line = 0;
  std::vector<Edge> edges;
  std::unordered_map<std::uint64_t, std::size_t> seen;

  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank(line)) continue;
    auto first = line.find_first_not_of(" \t");
    if (line[first] == comment) continue;

    if (!have_header) {
      std::array<long, 2> nm{};
      bool ok = false;
      if (format == GraphFormat::edge_list) {
        ok = read_ints<long>(line, nm);
      } else {
        std::istringstream ls(line);
        std::string p, tw, rest;
        ok = (ls >> p >> tw >> nm[0] >> nm[1]) && p == "p" && tw == "tw" && !(ls >> rest);
      }
      if (!ok) {
        throw ParseError(format == GraphFormat::edge_list ? "expected header 'n m'"
                                                          : "expected header 'p tw n m'",
                         lineno);
      }
      n = nm[0];
      m = nm[1];
      if (n < 0 || m < 0 || n > INT32_MAX) throw ParseError("header values out of range", lineno);
      have_header = true;
      header_line = lineno;
      edges.reserve(static_cast<std::size_t>(m));
      continue;
    }

    std::array<long, 2> uv{};
    if (!read_ints<long>(line, uv)) throw ParseError("expected edge 'u v'", lineno);
    long u = uv[0] - offset;
    long v = uv[1] - offset;
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw ParseError("vertex index out of declared range", lineno);
    }
    if (u == v) throw ParseError("self-loop at vertex " + std::to_string(uv[0]), lineno);
    auto key = static_cast<std::uint64_t>(std::min(u, v)) * static_cast<std::uint64_t>(n) +
               static_cast<std::uint64_t>(std::max(u, v));
    if (auto [it, fresh] = seen.emplace(key, lineno); !fresh) {
      throw ParseError("duplicate edge (first seen on line " + std::to_string(it->second) + ")",
                       lineno);
    }
    edges.emplace_back(static_cast<Vertex>(u), static_cast<Vertex>(v));
  }

  if (!have_header) throw ParseError("missing header", lineno);
  if (static_cast<long>(edges.size()) != m) {
    throw ParseError("header declares " + std::to_string(m) + " edges but " +
                         std::to_string(edges.size()) + " were read",
                     header_line);
  }
  return Graph::from_edges(static_cast<Vertex>(n), edges);
}

Graph parse_graph(std::string_view text, GraphFormat format) {
  std::istringstream in{std::string(text)};
  return parse_graph(in, format);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const auto& [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

void write_pace_gr(std::ostream& out, const Graph& g) {
  out << "p tw " << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const auto& [u, v] : g.edges()) out << u + 1 << ' ' << v + 1 << '\n';
}

}  // namespace nbr
