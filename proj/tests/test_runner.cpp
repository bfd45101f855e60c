#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "doctest.h"

#include "nbr/bench.hpp"
#include "nbr/error.hpp"
#include "nbr/runner.hpp"

using namespace nbr;

namespace {

std::string write_temp(const std::string& name, const std::string& contents) {
  auto path = std::filesystem::temp_directory_path() / ("nbr_test_" + name);
  std::ofstream(path) << contents;
  return path.string();
}

RunConfig p5_config(std::string backend) {
  RunConfig c;
  c.input = write_temp("p5.txt", "5 4\n0 1\n1 2\n2 3\n3 4\n");
  c.backend = std::move(backend);
  return c;
}

std::vector<std::int64_t> sizes_of(const std::string& json) {
  return nlohmann::json::parse(json)["sizes"].get<std::vector<std::int64_t>>();
}

}  // namespace

TEST_SUITE("runner") {
  TEST_CASE("P5 through every backend") {
    auto bfs = run(p5_config("bfs"));
    CHECK(sizes_of(bfs.text) == std::vector<std::int64_t>{3, 4, 5, 4, 3});
    auto vc = run(p5_config("vc"));
    auto tw = run(p5_config("tw"));
    CHECK(nlohmann::json::parse(vc.text)["sizes"].dump() == nlohmann::json::parse(bfs.text)["sizes"].dump());
    CHECK(nlohmann::json::parse(tw.text)["sizes"].dump() == nlohmann::json::parse(bfs.text)["sizes"].dump());
    CHECK(nlohmann::json::parse(vc.text)["parameter"] == 2);
    CHECK(nlohmann::json::parse(tw.text)["backend"] == "tw");
  }

  TEST_CASE("open mode and csv") {
    auto c = p5_config("tw");
    c.mode = Mode::open;
    CHECK(sizes_of(run(c).text) == std::vector<std::int64_t>{1, 1, 2, 1, 1});
    c.backend = "bfs";
    c.output = OutputFormat::csv;
    CHECK(run(c).text == "vertex,size\n0,1\n1,1\n2,2\n3,1\n4,1\n");
  }

  TEST_CASE("config conflicts") {
    auto c = p5_config("vc");
    c.radius = 3;
    CHECK_THROWS_AS(run(c), ConfigError);
    c.backend = "tw";
    CHECK_THROWS_AS(run(c), ConfigError);
    c.backend = "bogus";
    c.radius = 2;
    CHECK_THROWS_AS(run(c), ConfigError);
    c.backend = "bfs";
    c.cover_path = "x";
    CHECK_THROWS_AS(run(c), ConfigError);
    c = p5_config("bfs");
    c.radius = 0;
    CHECK_THROWS_AS(run(c), ConfigError);
  }

  TEST_CASE("auto selection") {
    auto c = p5_config("auto");
    c.radius = 3;
    auto r3 = run(c);
    CHECK(r3.result.backend == "bfs");
    CHECK_FALSE(r3.log.empty());

    c.radius = 2;
    c.td_path = write_temp("p5.td", "s td 4 2 5\nb 1 1 2\nb 2 2 3\nb 3 3 4\nb 4 4 5\n1 2\n2 3\n3 4\n");
    CHECK(run(c).result.backend == "tw");

    c.td_path.reset();
    c.cover_path = write_temp("p5.cover", "1\n3\n");
    CHECK(run(c).result.backend == "vc");

    c.cover_path.reset();
    CHECK(run(c).result.backend == "vc");
    c.max_cover = 1;
    auto fallback = run(c);
    CHECK(fallback.result.backend == "bfs");
    CHECK(fallback.log.back().find("exceeds") != std::string::npos);
    CHECK(sizes_of(fallback.text) == std::vector<std::int64_t>{3, 4, 5, 4, 3});
  }

  TEST_CASE("deterministic output") {
    RunConfig c;
    c.input = "gen:gnm:200:220";
    c.seed = 17;
    c.backend = "tw";
    const auto a = run(c).text;
    const auto b = run(c).text;
    CHECK(a == b);
    c.backend = "bfs";
    CHECK(sizes_of(run(c).text) == sizes_of(a));
    c.timing = true;
    CHECK(nlohmann::json::parse(run(c).text).contains("elapsed_ms"));
  }

  TEST_CASE("generator specs") {
    RunConfig c;
    c.input = "gen:split:50:4:0.5";
    c.backend = "vc";
    CHECK(run(c).result.sizes.size() == 50);
    c.input = "gen:grid:3:4";
    c.backend = "tw";
    CHECK(run(c).result.parameter <= 4);
    c.input = "gen:nope:1";
    CHECK_THROWS_AS(run(c), ConfigError);
    c.input = "gen:gnm:a:b";
    CHECK_THROWS_AS(run(c), ConfigError);
  }

  TEST_CASE("file, parse, cover and decomposition errors map to exit codes") {
    auto c = p5_config("bfs");
    c.input = "/nonexistent/graph.txt";
    try {
      run(c);
      FAIL("expected FileError");
    } catch (const std::exception& e) {
      CHECK(exit_code_for(e) == kExitFile);
    }

    c.input = write_temp("bad.txt", "2 1\n0 0\n");
    try {
      run(c);
      FAIL("expected ParseError");
    } catch (const std::exception& e) {
      CHECK(exit_code_for(e) == kExitParse);
    }

    c = p5_config("vc");
    c.cover_path = write_temp("bad.cover", "1\n");
    try {
      run(c);
      FAIL("expected InvalidCover");
    } catch (const std::exception& e) {
      CHECK(exit_code_for(e) == kExitInvalid);
    }
    c.cover_path = write_temp("junk.cover", "1 2\n");
    CHECK_THROWS_AS(run(c), ParseError);

    c = p5_config("tw");
    c.td_path = write_temp("bad.td", "s td 1 2 5\nb 1 1 2\n");
    try {
      run(c);
      FAIL("expected InvalidDecomposition");
    } catch (const std::exception& e) {
      CHECK(exit_code_for(e) == kExitInvalid);
    }

    CHECK(exit_code_for(CapExceeded("x")) == kExitCap);
    CHECK(exit_code_for(ConfigError("x")) == kExitConfig);
    CHECK(exit_code_for(std::runtime_error("x")) == kExitInternal);
  }
}

TEST_SUITE("bench") {
  TEST_CASE("suite parsing") {
    auto s = parse_suite(R"({"instances": [
      {"name": "s", "generator": "split", "n": 100, "t": 4, "p": 0.3, "seed": 2},
      {"generator": "grid", "rows": 3, "cols": 10},
      {"generator": "gnm", "n": 30, "m": 40, "seed": 1},
      {"generator": "reduction", "vars": 6, "clauses": 5, "seed": 3}]})");
    REQUIRE(s.instances.size() == 4);
    CHECK(s.instances[0].name == "s");
    CHECK(s.instances[1].name == "grid-2");
    CHECK(s.instances[3].clauses == 5);
    CHECK_THROWS_AS(parse_suite("{"), ParseError);
    CHECK_THROWS_AS(parse_suite(R"({"instances": [{"generator": "cube"}]})"), ParseError);
    CHECK_THROWS_AS(parse_suite(R"({"instances": [{"generator": "split", "n": 5}]})"), ParseError);
    CHECK_THROWS_AS(parse_suite(R"([])"), ParseError);
  }

  TEST_CASE("checksums agree across backends") {
    auto s = parse_suite(R"({"instances": [
      {"generator": "split", "n": 300, "t": 6, "p": 0.3, "seed": 2},
      {"generator": "grid", "rows": 4, "cols": 30},
      {"generator": "gnm", "n": 60, "m": 70, "seed": 1},
      {"generator": "reduction", "vars": 8, "clauses": 6, "seed": 3}]})");
    auto report = bench(s, {Backend::bfs, Backend::vc, Backend::tw}, 2);
    REQUIRE(report.rows.size() == 12);
    for (std::size_t i = 0; i < report.rows.size(); i += 3) {
      for (std::size_t k = 1; k < 3; ++k) {
        if (report.rows[i + k].skipped.empty()) CHECK(report.rows[i + k].checksum == report.rows[i].checksum);
      }
    }
    CHECK(report.rows[1].parameter == 6);
    CHECK(report.rows[5].parameter == 4);
    CHECK(report.rows[5].peak_table_entries > 0);
    CHECK(report.rows[10].parameter <= 6 + 2);
    auto j = nlohmann::json::parse(report.to_json());
    CHECK(j["rows"].size() == 12);
    CHECK(report.to_csv().rfind("instance,backend", 0) == 0);
  }

  TEST_CASE("reduction instances run vc on the certificate cover") {
    auto s = parse_suite(R"({"instances": [{"generator": "reduction", "vars": 16, "clauses": 10, "seed": 5}]})");
    auto report = bench(s, {Backend::bfs, Backend::vc}, 1);
    REQUIRE(report.rows.size() == 2);
    CHECK(report.rows[1].parameter <= 10 + 2);
    CHECK(report.rows[1].checksum == report.rows[0].checksum);
  }

  TEST_CASE("bench argument errors") {
    BenchSuite s;
    CHECK_THROWS_AS(bench(s, {Backend::bfs}, 0), ConfigError);
    CHECK_THROWS_AS(bench(s, {}, 1), ConfigError);
  }
}
