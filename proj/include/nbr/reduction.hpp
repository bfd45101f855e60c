#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nbr/graph.hpp"

namespace nbr {

/// CNF over variables 1..num_vars; literal +i is x_i, -i is its negation.
/// Clauses never contain a literal together with its negation and carry no
/// repeated literals.
struct CnfFormula {
  int num_vars = 0;
  std::vector<std::vector<int>> clauses;
};

/// DIMACS cnf. Tautological clauses are rejected (the message names the
/// 1-based clause index); repeated literals inside a clause are merged.
CnfFormula parse_dimacs(std::istream& in);
CnfFormula parse_dimacs(std::string_view text);

/// Half-open range of vertex indices.
struct VertexRange {
  Vertex begin = 0;
  Vertex end = 0;

  Vertex size() const { return end - begin; }
  bool contains(Vertex v) const { return v >= begin && v < end; }
};

/// The SAT -> closed 2-neighbourhood graph.
///
/// A holds one vertex per assignment of the first half of the (padded)
/// variables, B one per assignment of the second half; C one vertex per
/// clause. Assignment index i sets the half's k-th variable to bit k of i.
/// An assignment vertex is adjacent to exactly the clauses it does not
/// satisfy on its own half. va is adjacent to A, C and vb; vb to B, C and va.
/// The formula is satisfiable iff some a in A has |N^2[a]| < threshold.
struct ReductionInstance {
  Graph graph;
  int num_vars = 0;         ///< as given
  int padded_vars = 0;      ///< even, num_vars or num_vars + 1
  std::int64_t half_count = 0;  ///< N = 2^(padded_vars / 2)
  VertexRange a_range, b_range, c_range;
  Vertex va = 0, vb = 0;
  std::int64_t threshold = 0;  ///< 2N + m + 2

  /// C ∪ {va, vb}, a vertex cover of size m + 2.
  std::vector<Vertex> cover_certificate() const;
  std::string sidecar_json() const;
};

inline constexpr int kMaxReductionVars = 30;

/// Throws CapExceeded when the padded variable count exceeds `max_vars`.
ReductionInstance build_reduction(const CnfFormula& formula, int max_vars = kMaxReductionVars);

/// Uniform random 3-CNF: each clause draws three distinct variables and
/// independent signs. Needs num_vars >= 3.
CnfFormula random_3cnf(int num_vars, int num_clauses, std::uint64_t seed);

/// Exhaustive truth-table check. Throws CapExceeded beyond `max_vars`.
bool brute_sat(const CnfFormula& formula, int max_vars = kMaxReductionVars);

enum class Backend { bfs, vc, tw };

Backend parse_backend(std::string_view name);
std::string_view to_string(Backend backend);

struct SatVerdict {
  bool satisfiable = false;
  /// Index into A (assignment of the first half) with |N^2| below the
  /// threshold, when satisfiable.
  std::optional<std::int64_t> witness;
  std::int64_t min_size = 0;  ///< smallest |N^2[a]| over A
};

/// Decides satisfiability purely from closed 2-neighbourhood sizes of the
/// reduction graph computed by `backend`. The vc backend is handed the
/// C ∪ {va, vb} cover.
SatVerdict sat_via_sizes(const CnfFormula& formula, Backend backend);
SatVerdict sat_via_sizes(const ReductionInstance& instance, Backend backend);

}  // namespace nbr
