#include "nbr/bench.hpp"

#include <algorithm>
#include <chrono>
#include <istream>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "nbr/generators.hpp"
#include "nbr/nice_decomposition.hpp"
#include "nbr/sizes.hpp"
#include "nbr/tree_decomposition.hpp"
#include "nbr/vertex_cover.hpp"

namespace nbr {

BenchSuite parse_suite(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("suite: ") + e.what());
  }
  if (!j.is_object() || !j.contains("instances") || !j["instances"].is_array()) {
    throw ParseError("suite: expected an object with an 'instances' array");
  }
  BenchSuite suite;
  std::size_t index = 0;
  for (const auto& item : j["instances"]) {
    ++index;
    BenchInstance inst;
    try {
      inst.generator = item.at("generator").get<std::string>();
      inst.name = item.value("name", inst.generator + "-" + std::to_string(index));
      inst.seed = item.value("seed", std::uint64_t{0});
      if (inst.generator == "split") {
        inst.n = item.at("n").get<int>();
        inst.t = item.at("t").get<int>();
        inst.p = item.at("p").get<double>();
      } else if (inst.generator == "grid") {
        inst.rows = item.at("rows").get<int>();
        inst.cols = item.at("cols").get<int>();
      } else if (inst.generator == "gnm") {
        inst.n = item.at("n").get<int>();
        inst.m = item.at("m").get<std::size_t>();
      } else if (inst.generator == "reduction") {
        inst.vars = item.at("vars").get<int>();
        inst.clauses = item.at("clauses").get<int>();
      } else {
        throw ParseError("suite instance " + std::to_string(index) + ": unknown generator '" +
                         inst.generator + "'");
      }
    } catch (const nlohmann::json::exception& e) {
      throw ParseError("suite instance " + std::to_string(index) + ": " + e.what());
    }
    suite.instances.push_back(std::move(inst));
  }
  return suite;
}

BenchSuite parse_suite(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_suite(in);
}

namespace {

struct Prepared {
  Graph graph;
  std::optional<std::vector<Vertex>> cover;
  std::optional<TreeDecomposition> td;
};

Prepared prepare(const BenchInstance& inst) {
  Prepared p;
  if (inst.generator == "split") {
    p.graph = generate_split(inst.n, inst.t, inst.p, inst.seed);
    std::vector<Vertex> cover(static_cast<std::size_t>(inst.t));
    std::iota(cover.begin(), cover.end(), 0);
    p.cover = std::move(cover);
  } else if (inst.generator == "grid") {
    p.graph = generate_grid(inst.rows, inst.cols);
    p.td = grid_path_decomposition(inst.rows, inst.cols);
  } else if (inst.generator == "gnm") {
    p.graph = generate_gnm(inst.n, inst.m, inst.seed);
  } else {
    auto red = build_reduction(random_3cnf(inst.vars, inst.clauses, inst.seed));
    p.cover = red.cover_certificate();
    p.graph = std::move(red.graph);
  }
  return p;
}

double median(std::vector<double> xs) {
  std::sort(xs.begin(), xs.end());
  const auto mid = xs.size() / 2;
  return xs.size() % 2 ? xs[mid] : (xs[mid - 1] + xs[mid]) / 2;
}

}  // namespace

BenchReport bench(const BenchSuite& suite, const std::vector<Backend>& backends, int reps) {
  if (reps < 1) throw ConfigError("--reps must be at least 1");
  if (backends.empty()) throw ConfigError("no backends selected");
  BenchReport report;
  for (const auto& inst : suite.instances) {
    const Prepared prep = prepare(inst);
    std::optional<std::uint64_t> reference;
    std::string reference_backend;
    for (Backend backend : backends) {
      BenchRow row;
      row.instance = inst.name;
      row.backend = std::string(to_string(backend));
      row.n = prep.graph.num_vertices();
      row.m = prep.graph.num_edges();
      std::vector<double> times;
      SizesResult result;
      try {
        for (int rep = 0; rep < reps; ++rep) {
          const auto start = std::chrono::steady_clock::now();
          TwStats stats;
          switch (backend) {
            case Backend::bfs:
              result = bfs_sizes(prep.graph, 2, Mode::closed);
              break;
            case Backend::vc:
              result = prep.cover ? solve_vc(prep.graph, std::span<const Vertex>(*prep.cover))
                                  : solve_vc(prep.graph);
              break;
            case Backend::tw:
              result = solve_tw(prep.graph, prep.td, {}, &stats);
              row.peak_table_entries = stats.peak_table_entries;
              break;
          }
          times.push_back(std::chrono::duration<double, std::milli>(
                              std::chrono::steady_clock::now() - start)
                              .count());
        }
      } catch (const CapExceeded& e) {
        row.skipped = e.what();
        report.rows.push_back(std::move(row));
        continue;
      }
      row.parameter = result.parameter;
      row.median_ms = median(times);
      row.checksum = checksum(result.sizes);
      if (!reference) {
        reference = row.checksum;
        reference_backend = row.backend;
      } else if (*reference != row.checksum) {
        throw ChecksumMismatch("checksum mismatch on instance '" + inst.name + "' (seed " +
                                   std::to_string(inst.seed) + "): " + reference_backend +
                                   " vs " + row.backend,
                               inst.seed);
      }
      report.rows.push_back(std::move(row));
    }
  }
  return report;
}

std::string BenchReport::to_json() const {
  nlohmann::ordered_json rows_json = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["instance"] = r.instance;
    j["backend"] = r.backend;
    j["n"] = r.n;
    j["m"] = r.m;
    if (!r.skipped.empty()) {
      j["skipped"] = r.skipped;
    } else {
      j["parameter"] = r.parameter;
      j["median_ms"] = r.median_ms;
      j["peak_table_entries"] = r.peak_table_entries;
      j["checksum"] = r.checksum;
    }
    rows_json.push_back(std::move(j));
  }
  nlohmann::ordered_json out;
  out["rows"] = std::move(rows_json);
  return out.dump(2) + "\n";
}

std::string BenchReport::to_csv() const {
  std::ostringstream out;
  out << "instance,backend,n,m,parameter,median_ms,peak_table_entries,checksum,skipped\n";
  for (const auto& r : rows) {
    out << r.instance << ',' << r.backend << ',' << r.n << ',' << r.m << ',' << r.parameter << ','
        << r.median_ms << ',' << r.peak_table_entries << ',' << r.checksum << ','
        << (r.skipped.empty() ? "" : "yes") << '\n';
  }
  return out.str();
}

}  // namespace nbr
