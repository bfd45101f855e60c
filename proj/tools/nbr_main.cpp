#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "nbr/bench.hpp"
#include "nbr/reduction.hpp"
#include "nbr/runner.hpp"

namespace {

int do_run(const nbr::RunConfig& config) {
  const auto outcome = nbr::run(config);
  if (config.verbosity > 0) {
    for (const auto& line : outcome.log) std::cerr << line << '\n';
  }
  std::cout << outcome.text;
  return nbr::kExitOk;
}

int do_bench(const std::string& suite_path, const std::vector<std::string>& backend_names, int reps,
             bool csv) {
  std::ifstream in(suite_path);
  if (!in) throw nbr::FileError("cannot open '" + suite_path + "'");
  const auto suite = nbr::parse_suite(in);
  std::vector<nbr::Backend> backends;
  for (const auto& name : backend_names) backends.push_back(nbr::parse_backend(name));
  const auto report = nbr::bench(suite, backends, reps);
  std::cout << (csv ? report.to_csv() : report.to_json());
  return nbr::kExitOk;
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path);
  if (!out || !(out << contents)) throw nbr::FileError("cannot write '" + path + "'");
}

int do_reduce(const std::string& cnf_path, const std::string& prefix, bool emit_cover) {
  std::ifstream in(cnf_path);
  if (!in) throw nbr::FileError("cannot open '" + cnf_path + "'");
  const auto instance = nbr::build_reduction(nbr::parse_dimacs(in));
  std::ostringstream edges;
  nbr::write_edge_list(edges, instance.graph);
  write_file(prefix + ".edges", edges.str());
  write_file(prefix + ".json", instance.sidecar_json() + "\n");
  if (emit_cover) {
    std::ostringstream cover;
    for (auto v : instance.cover_certificate()) cover << v << '\n';
    write_file(prefix + ".cover", cover.str());
  }
  return nbr::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Per-vertex r-neighbourhood sizes"};
  app.require_subcommand(1);

  nbr::RunConfig config;
  std::string format = "edge-list";
  std::string mode = "closed";
  std::string output = "json";
  auto* run_cmd = app.add_subcommand("run", "Compute neighbourhood sizes for one graph");
  run_cmd->add_option("--input", config.input, "Graph file, or gen:gnm:N:M / gen:split:N:T:P / gen:grid:R:C")
      ->required();
  run_cmd->add_option("--format", format, "edge-list or pace-gr");
  run_cmd->add_option("--r", config.radius, "Radius");
  run_cmd->add_option("--mode", mode, "closed or open");
  run_cmd->add_option("--backend", config.backend, "auto, bfs, vc or tw");
  run_cmd->add_option("--cover", config.cover_path, "Vertex cover file, one vertex per line");
  run_cmd->add_option("--td", config.td_path, "Tree decomposition in PACE .td format");
  run_cmd->add_option("--output", output, "json or csv");
  run_cmd->add_option("--seed", config.seed, "Seed for gen: inputs");
  run_cmd->add_option("--max-cover", config.max_cover, "Cover size cap for the vc backend");
  run_cmd->add_option("--max-width", config.max_width, "Width cap for the tw backend");
  run_cmd->add_flag("--timing", config.timing, "Include elapsed time in the output");
  run_cmd->add_flag("-v,--verbose", config.verbosity, "Log backend selection to stderr");

  std::string suite_path;
  std::vector<std::string> backends{"bfs", "vc", "tw"};
  int reps = 3;
  bool bench_csv = false;
  auto* bench_cmd = app.add_subcommand("bench", "Benchmark backends on generated instances");
  bench_cmd->add_option("--suite", suite_path, "Suite JSON file")->required();
  bench_cmd->add_option("--backends", backends, "Backends to compare")->delimiter(',');
  bench_cmd->add_option("--reps", reps, "Repetitions per instance and backend");
  bench_cmd->add_flag("--csv", bench_csv, "CSV instead of JSON");

  std::string cnf_path;
  std::string prefix;
  bool emit_cover = false;
  auto* reduce_cmd = app.add_subcommand("reduce", "Export the reduction graph of a CNF formula");
  reduce_cmd->add_option("--cnf", cnf_path, "DIMACS cnf file")->required();
  reduce_cmd->add_option("--emit", prefix, "Output prefix (.edges, .json)")->required();
  reduce_cmd->add_flag("--cover", emit_cover, "Also write the cover certificate (.cover)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? nbr::kExitOk : nbr::kExitConfig;
  }

  try {
    if (*run_cmd) {
      config.format = nbr::parse_graph_format(format);
      config.mode = nbr::parse_mode(mode);
      if (output == "json") {
        config.output = nbr::OutputFormat::json;
      } else if (output == "csv") {
        config.output = nbr::OutputFormat::csv;
      } else {
        throw nbr::ConfigError("unknown output format '" + output + "'");
      }
      return do_run(config);
    }
    if (*bench_cmd) return do_bench(suite_path, backends, reps, bench_csv);
    return do_reduce(cnf_path, prefix, emit_cover);
  } catch (const nbr::ChecksumMismatch& e) {
    std::cerr << "error: " << e.what() << '\n';
    return nbr::kExitMismatch;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return nbr::exit_code_for(e);
  }
}
