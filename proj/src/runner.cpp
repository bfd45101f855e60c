#include "nbr/runner.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "nbr/error.hpp"
#include "nbr/generators.hpp"
#include "nbr/nice_decomposition.hpp"
#include "nbr/vertex_cover.hpp"

namespace nbr {

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const FileError*>(&e)) return kExitFile;
  if (dynamic_cast<const ParseError*>(&e)) return kExitParse;
  if (dynamic_cast<const GraphError*>(&e)) return kExitParse;
  if (dynamic_cast<const InvalidCover*>(&e)) return kExitInvalid;
  if (dynamic_cast<const InvalidDecomposition*>(&e)) return kExitInvalid;
  if (dynamic_cast<const CapExceeded*>(&e)) return kExitCap;
  if (dynamic_cast<const ConfigError*>(&e)) return kExitConfig;
  return kExitInternal;
}

namespace {

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open '" + path + "'");
  return in;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream ss(s);
  while (std::getline(ss, part, sep)) parts.push_back(part);
  return parts;
}

Graph generate_from_spec(const std::string& spec, std::uint64_t seed) {
  const auto parts = split(spec, ':');
  try {
    if (parts.size() == 4 && parts[1] == "gnm") {
      return generate_gnm(std::stoi(parts[2]), std::stoul(parts[3]), seed);
    }
    if (parts.size() == 5 && parts[1] == "split") {
      return generate_split(std::stoi(parts[2]), std::stoi(parts[3]), std::stod(parts[4]), seed);
    }
    if (parts.size() == 4 && parts[1] == "grid") {
      return generate_grid(std::stoi(parts[2]), std::stoi(parts[3]));
    }
  } catch (const std::logic_error&) {
    // stoi and friends; fall through to the generic message.
  }
  throw ConfigError("bad generator spec '" + spec +
                    "' (expected gen:gnm:N:M, gen:split:N:T:P or gen:grid:R:C)");
}

}  // namespace

Graph load_graph(const std::string& input, GraphFormat format, std::uint64_t seed) {
  if (input.rfind("gen:", 0) == 0) return generate_from_spec(input, seed);
  auto in = open_input(input);
  return parse_graph(in, format);
}

std::vector<Vertex> read_cover_file(const std::string& path) {
  auto in = open_input(path);
  std::vector<Vertex> cover;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    long v = 0;
    std::string rest;
    if (!(ls >> v)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      throw ParseError("expected a vertex index", lineno);
    }
    if (ls >> rest) throw ParseError("expected one vertex index per line", lineno);
    cover.push_back(static_cast<Vertex>(v));
  }
  return cover;
}

void check_config(const RunConfig& config) {
  if (config.radius < 1) throw ConfigError("--r must be at least 1");
  const auto& b = config.backend;
  if (b != "auto" && b != "bfs" && b != "vc" && b != "tw") {
    throw ConfigError("unknown backend '" + b + "' (expected auto, bfs, vc or tw)");
  }
  if ((b == "vc" || b == "tw") && config.radius != 2) {
    throw ConfigError("backend " + b + " only supports --r 2");
  }
  if (b == "bfs" && (config.cover_path || config.td_path)) {
    throw ConfigError("--cover and --td have no effect with backend bfs");
  }
  if (b == "vc" && config.td_path) throw ConfigError("--td requires backend tw or auto");
  if (b == "tw" && config.cover_path) throw ConfigError("--cover requires backend vc or auto");
  if (config.max_cover < 0 || config.max_cover > 64) throw ConfigError("cover cap must be in [0, 64]");
}

std::string to_json(const SizesResult& result, bool timing) {
  nlohmann::ordered_json j;
  j["backend"] = result.backend;
  j["r"] = result.radius;
  j["mode"] = std::string(to_string(result.mode));
  j["n"] = result.sizes.size();
  if (result.parameter >= 0) j["parameter"] = result.parameter;
  if (timing) j["elapsed_ms"] = std::chrono::duration<double, std::milli>(result.elapsed).count();
  j["sizes"] = result.sizes;
  return j.dump() + "\n";
}

std::string to_csv(const SizesResult& result) {
  std::ostringstream out;
  out << "vertex,size\n";
  for (std::size_t v = 0; v < result.sizes.size(); ++v) out << v << ',' << result.sizes[v] << '\n';
  return out.str();
}

RunOutcome run(const RunConfig& config) {
  check_config(config);
  RunOutcome outcome;
  auto& log = outcome.log;
  const Graph g = load_graph(config.input, config.format, config.seed);

  std::optional<std::vector<Vertex>> cover;
  if (config.cover_path) cover = read_cover_file(*config.cover_path);
  std::optional<TreeDecomposition> td;
  if (config.td_path) {
    auto in = open_input(*config.td_path);
    td = parse_td(in);
    for (const auto& w : td->warnings) log.push_back("td: " + w);
  }

  std::string backend = config.backend;
  if (backend == "auto") {
    if (config.radius != 2) {
      backend = "bfs";
      log.push_back("auto: r != 2, only bfs applies");
    } else if (td && td->width() <= config.max_width) {
      backend = "tw";
      log.push_back("auto: supplied decomposition has width " + std::to_string(td->width()));
    } else if (cover && static_cast<int>(cover->size()) <= config.max_cover) {
      backend = "vc";
      log.push_back("auto: supplied cover has size " + std::to_string(cover->size()));
    } else {
      try {
        auto found = find_vertex_cover(g);
        if (static_cast<int>(found.size()) <= config.max_cover) {
          backend = "vc";
          cover = std::move(found);
          log.push_back("auto: found a vertex cover of size " + std::to_string(cover->size()));
        } else {
          backend = "bfs";
          log.push_back("auto: minimum vertex cover " + std::to_string(found.size()) +
                        " exceeds cap " + std::to_string(config.max_cover) + ", using bfs");
        }
      } catch (const CapExceeded&) {
        backend = "bfs";
        log.push_back("auto: vertex cover search budget exhausted, using bfs");
      }
    }
  }

  SizesResult closed;
  if (backend == "bfs") {
    outcome.result = bfs_sizes(g, config.radius, config.mode);
  } else {
    if (backend == "vc") {
      VcOptions options;
      options.max_cover = config.max_cover;
      closed = cover ? solve_vc(g, std::span<const Vertex>(*cover), options)
                     : solve_vc(g, std::nullopt, options);
    } else {
      TwOptions options;
      options.max_width = config.max_width;
      closed = solve_tw(g, td, options);
    }
    outcome.result = config.mode == Mode::closed
                         ? closed
                         : open_from_closed(closed, bfs_sizes(g, 1, Mode::closed));
  }

  outcome.text = config.output == OutputFormat::json ? to_json(outcome.result, config.timing)
                                                     : to_csv(outcome.result);
  return outcome;
}

}  // namespace nbr
