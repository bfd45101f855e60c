#include <random>
#include <sstream>

#include "doctest.h"

#include "nbr/error.hpp"
#include "nbr/generators.hpp"
#include "nbr/nice_decomposition.hpp"
#include "nbr/tree_decomposition.hpp"
#include "oracles.hpp"

using namespace nbr;

namespace {

Graph from(Vertex n, std::vector<Edge> e) { return Graph::from_edges(n, e); }

Graph path(int n) {
  std::vector<Edge> e;
  for (Vertex v = 0; v + 1 < n; ++v) e.emplace_back(v, v + 1);
  return Graph::from_edges(n, e);
}

Graph cycle(int n) {
  std::vector<Edge> e;
  for (Vertex v = 0; v < n; ++v) e.emplace_back(std::min(v, (v + 1) % n), std::max(v, (v + 1) % n));
  return Graph::from_edges(n, e);
}

constexpr std::string_view kP3Td = "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n";

bool mentions(const TdReport& r, std::string_view word) {
  for (const auto& v : r.violations)
    if (v.find(word) != std::string::npos) return true;
  return false;
}

std::vector<std::int64_t> bfs2(const Graph& g) { return bfs_sizes(g, 2, Mode::closed).sizes; }

}  // namespace

TEST_SUITE("tree_decomposition") {
  TEST_CASE("parse P3 decomposition") {
    auto td = parse_td(kP3Td);
    CHECK(td.num_vertices == 3);
    CHECK(td.bags == std::vector<std::vector<Vertex>>{{0, 1}, {1, 2}});
    CHECK(td.tree_edges.size() == 1);
    CHECK(td.width() == 1);
    CHECK(td.warnings.empty());
    CHECK(validate_td(path(3), td).ok());
  }

  TEST_CASE("parse errors and warnings") {
    CHECK_THROWS_AS(parse_td("b 1 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_td("s td 1 2 3\nb 2 1 2\n"), ParseError);
    CHECK_THROWS_AS(parse_td("s td 1 2 3\nb 1 1 4\n"), ParseError);
    CHECK_THROWS_AS(parse_td("s td 2 2 3\nb 1 1 2\nb 1 2 3\n"), ParseError);
    CHECK_THROWS_AS(parse_td("s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 3\n"), ParseError);
    try {
      parse_td("s td 2 2 3\nb 1 1 2\nb 2 2 x\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }

    auto wide = parse_td("c comment\ns td 2 7 3\nb 1 1 2\nb 2 2 3\n1 2\n");
    CHECK(wide.width() == 1);
    CHECK(wide.warnings.size() == 1);

    auto missing = parse_td("s td 2 2 3\nb 1 1 2 3\n");
    CHECK(missing.bags.size() == 2);
    CHECK_FALSE(missing.warnings.empty());
  }

  TEST_CASE("write_td round-trips") {
    auto g = generate_gnm(25, 50, 2);
    auto td = greedy_td(g, EliminationStrategy::min_fill);
    std::ostringstream out;
    write_td(out, td);
    auto back = parse_td(out.str());
    CHECK(back.bags == td.bags);
    CHECK(back.tree_edges.size() == td.tree_edges.size());
    CHECK(validate_td(g, back).ok());
  }

  TEST_CASE("validation finds each violation") {
    auto g = path(3);

    auto dropped = parse_td(kP3Td);
    dropped.bags.pop_back();
    dropped.tree_edges.clear();
    auto r = validate_td(g, dropped);
    CHECK_FALSE(r.ok());
    CHECK(mentions(r, "edge"));
    CHECK(mentions(r, "vertex 2"));

    // Vertex 0 occurs in bags 0 and 2, joined only through bag 1 lacking it.
    TreeDecomposition split;
    split.num_vertices = 3;
    split.bags = {{0, 1}, {1, 2}, {0, 2}};
    split.tree_edges = {{0, 1}, {1, 2}};
    auto s = validate_td(cycle(3), split);
    CHECK_FALSE(s.ok());
    CHECK(mentions(s, "connected"));

    TreeDecomposition cyclic = split;
    cyclic.tree_edges.push_back({0, 2});
    CHECK_FALSE(validate_td(cycle(3), cyclic).ok());

    TreeDecomposition forest;
    forest.num_vertices = 3;
    forest.bags = {{0, 1}, {1, 2}};
    CHECK_FALSE(validate_td(g, forest).ok());

    TreeDecomposition wrong_n = parse_td(kP3Td);
    wrong_n.num_vertices = 4;
    CHECK_FALSE(validate_td(g, wrong_n).ok());
  }

  TEST_CASE("greedy widths") {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 10; ++i) {
      auto tree = oracle::random_tree(rng, 50);
      auto td = greedy_td(tree, EliminationStrategy::min_degree);
      CHECK(td.width() == 1);
      CHECK(validate_td(tree, td).ok());
    }
    for (auto s : {EliminationStrategy::min_degree, EliminationStrategy::min_fill}) {
      auto td = greedy_td(cycle(5), s);
      CHECK(td.width() == 2);
      CHECK(validate_td(cycle(5), td).ok());
    }
    auto grid = generate_grid(3, 3);
    auto gtd = greedy_td(grid, EliminationStrategy::min_fill);
    CHECK(gtd.width() <= 4);
    CHECK(validate_td(grid, gtd).ok());

    auto empty = greedy_td(from(0, {}), EliminationStrategy::min_fill);
    CHECK(validate_td(from(0, {}), empty).ok());
    auto isolated = greedy_td(from(4, {}), EliminationStrategy::min_degree);
    CHECK(isolated.width() == 0);
    CHECK(validate_td(from(4, {}), isolated).ok());
  }

  TEST_CASE("greedy decompositions are valid on random graphs") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 40; ++i) {
      const int n = 1 + static_cast<int>(rng() % 40);
      auto g = oracle::random_graph(rng, n, 0.15, static_cast<int>(rng() % 3));
      for (auto s : {EliminationStrategy::min_degree, EliminationStrategy::min_fill}) {
        auto td = greedy_td(g, s);
        INFO(validate_td(g, td).summary());
        CHECK(validate_td(g, td).ok());
      }
    }
  }

  TEST_CASE("grid path decomposition") {
    for (auto [r, c] : {std::pair{3, 7}, {8, 5}, {1, 6}, {4, 4}}) {
      auto g = generate_grid(r, c);
      auto td = grid_path_decomposition(r, c);
      CHECK(td.width() == std::min(r, c));
      CHECK(validate_td(g, td).ok());
    }
  }
}

TEST_SUITE("nice_decomposition") {
  TEST_CASE("single bag becomes a chain") {
    TreeDecomposition td;
    td.num_vertices = 3;
    td.bags = {{0, 1, 2}};
    auto g = cycle(3);
    auto nd = make_nice(g, td);
    CHECK(check_nice(nd).empty());
    REQUIRE(nd.nodes.size() == 7);
    CHECK(nd.nodes[0].kind == NodeKind::leaf);
    for (int i = 1; i <= 3; ++i) CHECK(nd.nodes[i].kind == NodeKind::introduce);
    for (int i = 4; i <= 6; ++i) CHECK(nd.nodes[i].kind == NodeKind::forget);
    CHECK(nd.nodes[nd.root()].bag.empty());
    CHECK(nd.width == 2);
  }

  TEST_CASE("equal bags collapse without joins") {
    TreeDecomposition td;
    td.num_vertices = 2;
    td.bags = {{0, 1}, {0, 1}};
    td.tree_edges = {{0, 1}};
    auto nd = make_nice(path(2), td);
    CHECK(check_nice(nd).empty());
    CHECK(nd.nodes.size() == 5);
    for (const auto& node : nd.nodes) CHECK(node.kind != NodeKind::join);
  }

  TEST_CASE("branching decompositions use binary joins") {
    // Star K_{1,3}: centre bag with three leaf bags.
    auto g = from(4, {{0, 1}, {0, 2}, {0, 3}});
    TreeDecomposition td;
    td.num_vertices = 4;
    td.bags = {{0}, {0, 1}, {0, 2}, {0, 3}};
    td.tree_edges = {{0, 1}, {0, 2}, {0, 3}};
    auto nd = make_nice(g, td);
    CHECK(check_nice(nd).empty());
    int joins = 0;
    for (const auto& node : nd.nodes) {
      joins += node.kind == NodeKind::join;
      if (node.kind == NodeKind::join) {
        CHECK(nd.nodes[node.children[0]].bag == node.bag);
        CHECK(nd.nodes[node.children[1]].bag == node.bag);
      }
    }
    CHECK(joins == 2);
    CHECK(validate_td(g, nd.to_tree_decomposition()).ok());
  }

  TEST_CASE("invalid decompositions are refused") {
    auto td = parse_td(kP3Td);
    td.bags.pop_back();
    td.tree_edges.clear();
    CHECK_THROWS_AS(make_nice(path(3), td), InvalidDecomposition);
    CHECK_THROWS_AS(solve_tw(path(3), td), InvalidDecomposition);
  }

  TEST_CASE("check_nice reports broken structure") {
    auto nd = make_nice(path(3), parse_td(kP3Td));
    REQUIRE(check_nice(nd).empty());
    auto broken = nd;
    broken.nodes.back().bag.push_back(0);
    CHECK_FALSE(check_nice(broken).empty());
    auto wrong_kind = nd;
    wrong_kind.nodes[1].kind = NodeKind::forget;
    CHECK_FALSE(check_nice(wrong_kind).empty());
  }

  TEST_CASE("P3 tables by hand") {
    // Rooted at {1, 2}: the chain below forgets 0 before introducing 2.
    auto g = path(3);
    auto nd = make_nice(g, parse_td("s td 2 2 3\nb 1 2 3\nb 2 1 2\n1 2\n"));
    auto past = past_tables(g, nd);
    auto future = future_tables(g, nd, past);
    bool found = false;
    for (std::size_t i = 0; i < nd.nodes.size(); ++i) {
      const auto& node = nd.nodes[i];
      CHECK(past[i][0] == 0);
      if (node.kind == NodeKind::forget && node.vertex == 0 && node.bag == std::vector<Vertex>{1}) {
        CHECK(past[i][1] == 1);
        found = true;
      }
      if (node.bag == std::vector<Vertex>{0, 1}) {
        // Y = {1}: vertex 2 is still in the future and adjacent to 1.
        CHECK(future[i][0b10] == 1);
      }
    }
    CHECK(found);
    for (auto x : future[nd.root()]) CHECK(x == 0);
  }

  TEST_CASE("tables equal the definitional oracle") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 40; ++i) {
      const int n = 1 + static_cast<int>(rng() % 30);
      auto g = oracle::random_graph(rng, n, std::uniform_real_distribution<double>(0.05, 0.4)(rng),
                                    static_cast<int>(rng() % 3));
      auto td = greedy_td(g, i % 2 ? EliminationStrategy::min_fill : EliminationStrategy::min_degree);
      if (td.width() > 14) continue;
      auto nd = make_nice(g, td);
      REQUIRE(check_nice(nd).empty());
      auto past = past_tables(g, nd);
      auto future = future_tables(g, nd, past);
      CHECK(past == oracle::definitional_tables(g, nd, false));
      CHECK(future == oracle::definitional_tables(g, nd, true));
      for (std::size_t k = 0; k < nd.nodes.size(); ++k) {
        CHECK(past[k].size() == (std::size_t{1} << nd.nodes[k].bag.size()));
        // Monotone in Y.
        for (std::uint64_t y = 0; y < past[k].size(); ++y)
          for (std::size_t b = 0; b < nd.nodes[k].bag.size(); ++b)
            CHECK(past[k][y] <= past[k][y | (std::uint64_t{1} << b)]);
      }
    }
  }

  TEST_CASE("second pass hand cases") {
    auto p3 = path(3);
    auto nd = make_nice(p3, parse_td(kP3Td));
    auto past = past_tables(p3, nd);
    auto future = future_tables(p3, nd, past);
    CHECK(second_pass(p3, nd, past, future).sizes == std::vector<std::int64_t>{3, 3, 3});

    auto star = from(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    TreeDecomposition td;
    td.num_vertices = 5;
    td.bags = {{0, 1}, {0, 2}, {0, 3}, {0, 4}};
    td.tree_edges = {{0, 1}, {1, 2}, {2, 3}};
    CHECK(solve_tw(star, td).sizes == std::vector<std::int64_t>(5, 5));
  }

  TEST_CASE("solve_tw matches bfs") {
    auto grid = generate_grid(3, 3);
    CHECK(solve_tw(grid).sizes == bfs2(grid));

    std::mt19937_64 rng(9);
    auto tree = oracle::random_tree(rng, 1000);
    TwStats stats;
    auto r = solve_tw(tree, std::nullopt, {}, &stats);
    CHECK(r.sizes == bfs2(tree));
    CHECK(r.parameter == 1);
    CHECK(r.backend == "tw");

    for (int i = 0; i < 60; ++i) {
      const int n = 1 + static_cast<int>(rng() % 45);
      auto g = oracle::random_graph(rng, n, std::uniform_real_distribution<double>(0.02, 0.3)(rng),
                                    static_cast<int>(rng() % 4));
      CHECK(solve_tw(g).sizes == bfs2(g));
      TwOptions o;
      o.heuristic = EliminationStrategy::min_degree;
      CHECK(solve_tw(g, std::nullopt, o).sizes == bfs2(g));
    }
    CHECK(solve_tw(from(0, {})).sizes.empty());
    CHECK(solve_tw(from(3, {})).sizes == std::vector<std::int64_t>{1, 1, 1});
  }

  TEST_CASE("redundant bags and supplied decompositions") {
    auto g = cycle(6);
    TreeDecomposition td;
    td.num_vertices = 6;
    td.bags = {{0, 1, 5}, {1, 5}, {1, 4, 5}, {1, 4, 5}, {1, 2, 4}, {2, 3, 4}, {2, 3, 4}};
    td.tree_edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 6}};
    REQUIRE(validate_td(g, td).ok());
    CHECK(solve_tw(g, td).sizes == std::vector<std::int64_t>(6, 5));
  }

  TEST_CASE("peak table entries stay within the width bound") {
    std::mt19937_64 rng(10);
    for (int i = 0; i < 10; ++i) {
      auto g = generate_gnm(200, 220, rng());
      auto td = greedy_td(g, EliminationStrategy::min_fill);
      auto nd = make_nice(g, td);
      TwStats stats;
      solve_tw(g, td, {}, &stats);
      CHECK(stats.peak_table_entries > 0);
      CHECK(stats.peak_table_entries <= nd.nodes.size() << (nd.width + 1));
    }
  }

  TEST_CASE("width cap") {
    auto g = generate_gnm(40, 600, 1);
    TwOptions o;
    o.max_width = 5;
    try {
      solve_tw(g, std::nullopt, o);
      FAIL("expected CapExceeded");
    } catch (const CapExceeded& e) {
      CHECK(std::string(e.what()).find("width") != std::string::npos);
    }
    // Width 30 under the default cap of 25.
    TreeDecomposition td;
    td.num_vertices = 31;
    td.bags.emplace_back();
    for (Vertex v = 0; v < 31; ++v) td.bags[0].push_back(v);
    CHECK_THROWS_AS(solve_tw(Graph::from_edges(31, {}), td), CapExceeded);
  }
}
