#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "nbr/error.hpp"
#include "nbr/reduction.hpp"

namespace nbr {

/// One generated benchmark instance. Which fields are read depends on
/// `generator`:
///   split      n, t, p, seed       (vc uses the declared cover [0, t))
///   grid       rows, cols          (tw uses the path decomposition)
///   gnm        n, m, seed
///   reduction  vars, clauses, seed (random 3-CNF; vc uses C ∪ {va, vb})
struct BenchInstance {
  std::string name;
  std::string generator;
  int n = 0;
  int t = 0;
  double p = 0.0;
  std::size_t m = 0;
  int rows = 0;
  int cols = 0;
  int vars = 0;
  int clauses = 0;
  std::uint64_t seed = 0;
};

struct BenchSuite {
  std::vector<BenchInstance> instances;
};

/// {"instances": [{"name": ..., "generator": "split", "n": ..., ...}, ...]}
BenchSuite parse_suite(std::istream& in);
BenchSuite parse_suite(std::string_view text);

struct BenchRow {
  std::string instance;
  std::string backend;
  int n = 0;
  std::size_t m = 0;
  int parameter = -1;  ///< t or width; -1 for bfs
  double median_ms = 0.0;
  std::size_t peak_table_entries = 0;  ///< tw only
  std::uint64_t checksum = 0;
  std::string skipped;  ///< non-empty when the backend refused the instance
};

struct BenchReport {
  std::vector<BenchRow> rows;

  std::string to_json() const;
  std::string to_csv() const;
};

/// Backends disagreed on an instance. The message carries the seed.
class ChecksumMismatch : public Error {
 public:
  ChecksumMismatch(const std::string& what, std::uint64_t seed) : Error(what), seed_(seed) {}
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

/// Runs every backend `reps` times on every instance at r = 2 (closed).
/// Backends whose cap is exceeded are reported as skipped; any checksum
/// disagreement throws ChecksumMismatch.
BenchReport bench(const BenchSuite& suite, const std::vector<Backend>& backends, int reps);

}  // namespace nbr
