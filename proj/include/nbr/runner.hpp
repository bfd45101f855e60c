#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nbr/graph.hpp"
#include "nbr/sizes.hpp"

namespace nbr {

/// Process exit codes of the `nbr` tool. Stable; documented in the README.
enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitConfig = 2,      ///< bad arguments or conflicting options
  kExitFile = 3,        ///< a file could not be read or written
  kExitParse = 4,       ///< malformed graph, cover, decomposition or CNF
  kExitInvalid = 5,     ///< cover or decomposition does not fit the graph
  kExitCap = 6,         ///< parameter over a backend cap or search budget
  kExitMismatch = 7,    ///< bench: backends disagreed
};

/// Maps the library's exception types to exit codes.
int exit_code_for(const std::exception& e);

/// Input file could not be opened or written.
class FileError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { json, csv };

struct RunConfig {
  /// Path, or `gen:gnm:N:M`, `gen:split:N:T:P`, `gen:grid:R:C` (uses `seed`).
  std::string input;
  GraphFormat format = GraphFormat::edge_list;
  int radius = 2;
  Mode mode = Mode::closed;
  std::string backend = "auto";  ///< auto | bfs | vc | tw
  std::optional<std::string> cover_path;
  std::optional<std::string> td_path;
  OutputFormat output = OutputFormat::json;
  std::uint64_t seed = 0;
  int verbosity = 0;
  /// Include wall-clock time in the output. Off by default so identical
  /// inputs give identical bytes.
  bool timing = false;
  int max_cover = 40;
  int max_width = 25;
};

struct RunOutcome {
  SizesResult result;
  std::string text;              ///< serialized result
  std::vector<std::string> log;  ///< auto-selection rationale and warnings
};

/// Throws ConfigError for inapplicable combinations (vc/tw with r != 2, ...).
void check_config(const RunConfig& config);

RunOutcome run(const RunConfig& config);

Graph load_graph(const std::string& input, GraphFormat format, std::uint64_t seed);
std::vector<Vertex> read_cover_file(const std::string& path);

std::string to_json(const SizesResult& result, bool timing);
std::string to_csv(const SizesResult& result);

}  // namespace nbr
