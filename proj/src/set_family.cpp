#include "nbr/set_family.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <string>

#include "nbr/error.hpp"

namespace nbr {

namespace {

// Operation counts are compared in double; 2^64 does not fit an integer.
double pow2(int k) { return std::ldexp(1.0, k); }

double table_cost(const WeightedSetFamily& family) {
  double cost = 0;
  for (const auto& [set, w] : family.entries()) cost += pow2(std::popcount(set));
  return cost;
}

bool use_scan(QueryStrategy strategy, double transform_cost, double scan_cost) {
  switch (strategy) {
    case QueryStrategy::transform: return false;
    case QueryStrategy::scan: return true;
    case QueryStrategy::automatic: break;
  }
  return scan_cost < transform_cost;
}

Weight lookup(const SupersetTable& table, SetMask set) {
  auto it = table.find(set);
  return it == table.end() ? 0 : it->second;
}

}  // namespace

WeightedSetFamily WeightedSetFamily::build(std::span<const std::pair<SetMask, Weight>> sets,
                                           int universe_size) {
  if (universe_size < 0 || universe_size > kMaxUniverse) {
    throw ConfigError("universe size " + std::to_string(universe_size) +
                      " exceeds the word-width limit of " + std::to_string(kMaxUniverse));
  }
  WeightedSetFamily f;
  f.universe_size_ = universe_size;
  const SetMask universe = f.universe_mask();
  f.entries_.reserve(sets.size());
  for (const auto& [set, weight] : sets) {
    if ((set & ~universe) != 0) {
      throw ConfigError("set has elements outside a universe of size " +
                        std::to_string(universe_size));
    }
    if (weight < 0) throw ConfigError("negative weight");
    if (weight == 0) continue;
    f.entries_[set] += weight;
  }
  for (const auto& [set, weight] : f.entries_) {
    f.total_weight_ += weight;
    f.max_card_ = std::max(f.max_card_, std::popcount(set));
  }
  return f;
}

Weight WeightedSetFamily::weight_of(SetMask set) const {
  auto it = entries_.find(set);
  return it == entries_.end() ? 0 : it->second;
}

SetMask WeightedSetFamily::universe_mask() const {
  return universe_size_ == kMaxUniverse ? ~SetMask{0} : (SetMask{1} << universe_size_) - 1;
}

SetMask extract_bits(SetMask set, SetMask selector) {
  SetMask out = 0;
  for (SetMask bit = 1; selector != 0; bit <<= 1) {
    SetMask low = selector & -selector;
    if (set & low) out |= bit;
    selector ^= low;
  }
  return out;
}

SetMask expand_bits(SetMask packed, SetMask selector) {
  SetMask out = 0;
  for (; selector != 0 && packed != 0; packed >>= 1) {
    SetMask low = selector & -selector;
    if (packed & 1) out |= low;
    selector ^= low;
  }
  return out;
}

void zeta_superset(std::span<Weight> values) {
  assert(std::has_single_bit(values.size()));
  for (std::size_t bit = 1; bit < values.size(); bit <<= 1) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!(i & bit)) values[i] += values[i | bit];
    }
  }
}

void mobius_superset(std::span<Weight> values) {
  assert(std::has_single_bit(values.size()));
  for (std::size_t bit = 1; bit < values.size(); bit <<= 1) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (!(i & bit)) values[i] -= values[i | bit];
    }
  }
}

SupersetTable superset_weight_table(const WeightedSetFamily& family) {
  SupersetTable table;
  table.reserve(static_cast<std::size_t>(std::min(table_cost(family), 1e8)));
  for (const auto& [set, weight] : family.entries()) {
    // All submasks of `set`, including set itself and the empty set.
    for (SetMask sub = set;; sub = (sub - 1) & set) {
      table[sub] += weight;
      if (sub == 0) break;
    }
  }
  return table;
}

Weight subset_weight(const WeightedSetFamily& family, SetMask query) {
  Weight total = 0;
  for (SetMask sub = query;; sub = (sub - 1) & query) {
    total += family.weight_of(sub);
    if (sub == 0) break;
  }
  return total;
}

std::vector<Weight> mobius_restrict(const WeightedSetFamily& /*family*/, SetMask query,
                                    const SupersetTable& table) {
  const int k = std::popcount(query);
  std::vector<Weight> values(std::size_t{1} << k);
  for (std::size_t i = 0; i < values.size(); ++i) {
    values[i] = lookup(table, expand_bits(i, query));
  }
  mobius_superset(values);
  return values;
}

Weight intersect_weight(const WeightedSetFamily& family, SetMask /*query*/,
                        std::span<const Weight> restricted) {
  // restricted[0] is the weight of members disjoint from the query.
  return family.total_weight() - restricted[0];
}

std::vector<Weight> superset_weights(const WeightedSetFamily& family,
                                     std::span<const SetMask> queries,
                                     QueryStrategy strategy) {
  std::vector<Weight> out(queries.size(), 0);
  const double scan_cost = static_cast<double>(family.size()) * static_cast<double>(queries.size());
  if (use_scan(strategy, table_cost(family) + static_cast<double>(queries.size()), scan_cost)) {
    for (std::size_t q = 0; q < queries.size(); ++q) {
      for (const auto& [set, w] : family.entries()) {
        if ((queries[q] & ~set) == 0) out[q] += w;
      }
    }
    return out;
  }
  const SupersetTable table = superset_weight_table(family);
  for (std::size_t q = 0; q < queries.size(); ++q) out[q] = lookup(table, queries[q]);
  return out;
}

std::vector<Weight> subset_weights(const WeightedSetFamily& family,
                                   std::span<const SetMask> queries,
                                   QueryStrategy strategy) {
  std::vector<Weight> out(queries.size(), 0);
  for (std::size_t q = 0; q < queries.size(); ++q) {
    const SetMask query = queries[q];
    if (use_scan(strategy, pow2(std::popcount(query)), static_cast<double>(family.size()))) {
      for (const auto& [set, w] : family.entries()) {
        if ((set & ~query) == 0) out[q] += w;
      }
    } else {
      out[q] = subset_weight(family, query);
    }
  }
  return out;
}

std::vector<Weight> intersect_weights(const WeightedSetFamily& family,
                                      std::span<const SetMask> queries,
                                      QueryStrategy strategy) {
  std::vector<Weight> out(queries.size(), 0);
  double transform_cost = table_cost(family);
  for (SetMask q : queries) {
    const int k = std::popcount(q);
    transform_cost += pow2(k) * (k + 1);
  }
  const double scan_cost = static_cast<double>(family.size()) * static_cast<double>(queries.size());
  if (use_scan(strategy, transform_cost, scan_cost)) {
    for (std::size_t q = 0; q < queries.size(); ++q) {
      for (const auto& [set, w] : family.entries()) {
        if ((set & queries[q]) != 0) out[q] += w;
      }
    }
    return out;
  }
  const SupersetTable table = superset_weight_table(family);
  for (std::size_t q = 0; q < queries.size(); ++q) {
    auto restricted = mobius_restrict(family, queries[q], table);
    out[q] = intersect_weight(family, queries[q], restricted);
  }
  return out;
}

std::vector<QueryAnswer> batch_queries(const WeightedSetFamily& family,
                                       std::span<const SetMask> queries,
                                       QueryStrategy strategy) {
  std::vector<QueryAnswer> out(queries.size());
  for (SetMask q : queries) {
    if ((q & ~family.universe_mask()) != 0) {
      throw ConfigError("query has elements outside the family's universe");
    }
  }
  if (strategy == QueryStrategy::transform) {
    const SupersetTable table = superset_weight_table(family);
    for (std::size_t i = 0; i < queries.size(); ++i) {
      const SetMask q = queries[i];
      auto restricted = mobius_restrict(family, q, table);
      out[i] = {lookup(table, q), subset_weight(family, q), intersect_weight(family, q, restricted)};
    }
    return out;
  }
  auto sup = superset_weights(family, queries, strategy);
  auto sub = subset_weights(family, queries, strategy);
  auto meet = intersect_weights(family, queries, strategy);
  for (std::size_t i = 0; i < queries.size(); ++i) out[i] = {sup[i], sub[i], meet[i]};
  return out;
}

}  // namespace nbr
