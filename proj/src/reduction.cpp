#include "nbr/reduction.hpp"

#include <algorithm>
#include <cstdlib>
#include <istream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "nbr/error.hpp"
#include "nbr/nice_decomposition.hpp"
#include "nbr/sizes.hpp"
#include "nbr/vertex_cover.hpp"

namespace nbr {

CnfFormula parse_dimacs(std::istream& in) {
  CnfFormula f;
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  long declared_clauses = 0;
  std::vector<int> clause;

  auto finish_clause = [&](std::size_t at) {
    std::sort(clause.begin(), clause.end());
    clause.erase(std::unique(clause.begin(), clause.end()), clause.end());
    for (int lit : clause) {
      if (lit > 0 && std::binary_search(clause.begin(), clause.end(), -lit)) {
        throw ParseError("clause " + std::to_string(f.clauses.size() + 1) +
                             " is tautological (contains " + std::to_string(lit) + " and " +
                             std::to_string(-lit) + ")",
                         at);
      }
    }
    f.clauses.push_back(std::move(clause));
    clause.clear();
  };

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string head;
    if (!(ls >> head) || head == "c" || head == "%") continue;
    if (!have_header) {
      std::string cnf, rest;
      long vars = 0;
      if (head != "p" || !(ls >> cnf >> vars >> declared_clauses) || cnf != "cnf" || vars < 0 ||
          declared_clauses < 0 || (ls >> rest)) {
        throw ParseError("expected header 'p cnf <vars> <clauses>'", lineno);
      }
      f.num_vars = static_cast<int>(vars);
      have_header = true;
      continue;
    }
    std::istringstream tokens(line);
    std::string tok;
    while (tokens >> tok) {
      char* end = nullptr;
      long lit = std::strtol(tok.c_str(), &end, 10);
      if (*end != '\0') throw ParseError("malformed literal '" + tok + "'", lineno);
      if (lit == 0) {
        finish_clause(lineno);
      } else {
        if (std::labs(lit) > f.num_vars) {
          throw ParseError("literal " + tok + " out of range", lineno);
        }
        clause.push_back(static_cast<int>(lit));
      }
    }
  }
  if (!have_header) throw ParseError("missing 'p cnf' header", lineno);
  if (!clause.empty()) finish_clause(lineno);
  return f;
}

CnfFormula parse_dimacs(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dimacs(in);
}

std::vector<Vertex> ReductionInstance::cover_certificate() const {
  std::vector<Vertex> cover;
  for (Vertex c = c_range.begin; c < c_range.end; ++c) cover.push_back(c);
  cover.push_back(va);
  cover.push_back(vb);
  return cover;
}

std::string ReductionInstance::sidecar_json() const {
  nlohmann::ordered_json j;
  j["num_vars"] = num_vars;
  j["padded_vars"] = padded_vars;
  j["N"] = half_count;
  j["m"] = c_range.size();
  j["a_range"] = {a_range.begin, a_range.end};
  j["b_range"] = {b_range.begin, b_range.end};
  j["c_range"] = {c_range.begin, c_range.end};
  j["va"] = va;
  j["vb"] = vb;
  j["threshold"] = threshold;
  j["num_vertices"] = graph.num_vertices();
  j["num_edges"] = graph.num_edges();
  return j.dump(2);
}

namespace {

// Does the partial assignment `bits` over variables [first, first + count)
// satisfy the clause? Literals on other variables are ignored.
bool satisfies(const std::vector<int>& clause, int first, int count, std::uint64_t bits) {
  for (int lit : clause) {
    const int var = std::abs(lit) - 1;
    if (var < first || var >= first + count) continue;
    const bool value = (bits >> (var - first)) & 1;
    if (value == (lit > 0)) return true;
  }
  return false;
}

}  // namespace

ReductionInstance build_reduction(const CnfFormula& formula, int max_vars) {
  ReductionInstance r;
  r.num_vars = formula.num_vars;
  r.padded_vars = formula.num_vars + (formula.num_vars % 2);
  if (r.padded_vars > max_vars) {
    throw CapExceeded("reduction needs " + std::to_string(r.padded_vars) +
                      " variables after padding; the cap is " + std::to_string(max_vars));
  }
  const int half = r.padded_vars / 2;
  const auto big_n = std::int64_t{1} << half;
  const auto m = static_cast<Vertex>(formula.clauses.size());
  r.half_count = big_n;
  r.a_range = {0, static_cast<Vertex>(big_n)};
  r.b_range = {static_cast<Vertex>(big_n), static_cast<Vertex>(2 * big_n)};
  r.c_range = {static_cast<Vertex>(2 * big_n), static_cast<Vertex>(2 * big_n + m)};
  r.va = r.c_range.end;
  r.vb = r.va + 1;
  r.threshold = 2 * big_n + m + 2;

  std::vector<Edge> edges;
  for (std::int64_t i = 0; i < big_n; ++i) {
    const auto alpha = static_cast<Vertex>(r.a_range.begin + i);
    const auto beta = static_cast<Vertex>(r.b_range.begin + i);
    for (Vertex c = 0; c < m; ++c) {
      const auto& clause = formula.clauses[c];
      if (!satisfies(clause, 0, half, static_cast<std::uint64_t>(i))) {
        edges.emplace_back(alpha, r.c_range.begin + c);
      }
      if (!satisfies(clause, half, half, static_cast<std::uint64_t>(i))) {
        edges.emplace_back(beta, r.c_range.begin + c);
      }
    }
    edges.emplace_back(r.va, alpha);
    edges.emplace_back(r.vb, beta);
  }
  for (Vertex c = r.c_range.begin; c < r.c_range.end; ++c) {
    edges.emplace_back(r.va, c);
    edges.emplace_back(r.vb, c);
  }
  edges.emplace_back(r.va, r.vb);
  r.graph = Graph::from_edges(r.vb + 1, edges);
  return r;
}

CnfFormula random_3cnf(int num_vars, int num_clauses, std::uint64_t seed) {
  if (num_vars < 3 || num_clauses < 0) throw ConfigError("random_3cnf needs at least 3 variables");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(1, num_vars);
  std::bernoulli_distribution negate(0.5);
  CnfFormula f;
  f.num_vars = num_vars;
  for (int c = 0; c < num_clauses; ++c) {
    std::vector<int> clause;
    while (clause.size() < 3) {
      int v = pick(rng);
      if (std::none_of(clause.begin(), clause.end(), [&](int l) { return std::abs(l) == v; })) {
        clause.push_back(negate(rng) ? -v : v);
      }
    }
    std::sort(clause.begin(), clause.end());
    f.clauses.push_back(std::move(clause));
  }
  return f;
}

bool brute_sat(const CnfFormula& formula, int max_vars) {
  if (formula.num_vars > max_vars) {
    throw CapExceeded("brute_sat supports at most " + std::to_string(max_vars) + " variables");
  }
  const std::uint64_t total = std::uint64_t{1} << formula.num_vars;
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    bool all = std::all_of(formula.clauses.begin(), formula.clauses.end(), [&](const auto& c) {
      return satisfies(c, 0, formula.num_vars, bits);
    });
    if (all) return true;
  }
  return false;
}

Backend parse_backend(std::string_view name) {
  if (name == "bfs") return Backend::bfs;
  if (name == "vc") return Backend::vc;
  if (name == "tw") return Backend::tw;
  throw ConfigError("unknown backend '" + std::string(name) + "'");
}

std::string_view to_string(Backend backend) {
  switch (backend) {
    case Backend::bfs: return "bfs";
    case Backend::vc: return "vc";
    case Backend::tw: return "tw";
  }
  return "?";
}

SatVerdict sat_via_sizes(const ReductionInstance& instance, Backend backend) {
  SizesResult sizes;
  switch (backend) {
    case Backend::bfs:
      sizes = bfs_sizes(instance.graph, 2, Mode::closed);
      break;
    case Backend::vc: {
      const auto cover = instance.cover_certificate();
      sizes = solve_vc(instance.graph, std::span<const Vertex>(cover));
      break;
    }
    case Backend::tw:
      sizes = solve_tw(instance.graph);
      break;
  }
  SatVerdict verdict;
  verdict.min_size = instance.threshold;
  for (Vertex a = instance.a_range.begin; a < instance.a_range.end; ++a) {
    if (sizes.sizes[a] < verdict.min_size) {
      verdict.min_size = sizes.sizes[a];
      if (sizes.sizes[a] < instance.threshold && !verdict.witness) {
        verdict.witness = a - instance.a_range.begin;
      }
    }
  }
  verdict.satisfiable = verdict.witness.has_value();
  return verdict;
}

SatVerdict sat_via_sizes(const CnfFormula& formula, Backend backend) {
  return sat_via_sizes(build_reduction(formula), backend);
}

}  // namespace nbr
