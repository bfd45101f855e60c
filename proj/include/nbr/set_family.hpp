#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace nbr {

/// A subset of a universe of at most 64 elements; element i is bit i.
using SetMask = std::uint64_t;
/// Weights are multiplicities. Signed so the Möbius transform can run in place.
using Weight = std::int64_t;

inline constexpr int kMaxUniverse = 64;

/// Multiset of subsets of a small universe with positive integer weights.
///
/// Duplicate members are merged by summing their weights and zero-weight
/// members are dropped, so every stored key has weight > 0.
class WeightedSetFamily {
 public:
  WeightedSetFamily() = default;

  /// Throws ConfigError if universe_size exceeds 64, a mask has bits outside
  /// the universe, or a weight is negative.
  static WeightedSetFamily build(std::span<const std::pair<SetMask, Weight>> sets,
                                 int universe_size);

  int universe_size() const { return universe_size_; }
  Weight total_weight() const { return total_weight_; }
  /// Largest member cardinality, 0 for the empty family.
  int max_card() const { return max_card_; }
  std::size_t size() const { return entries_.size(); }
  const std::unordered_map<SetMask, Weight>& entries() const { return entries_; }
  Weight weight_of(SetMask set) const;
  SetMask universe_mask() const;

 private:
  int universe_size_ = 0;
  Weight total_weight_ = 0;
  int max_card_ = 0;
  std::unordered_map<SetMask, Weight> entries_;
};

/// S -> w_sup(S) = total weight of members containing S. Keys absent from the
/// table have value 0. Built by enumerating the subsets of every member.
using SupersetTable = std::unordered_map<SetMask, Weight>;

SupersetTable superset_weight_table(const WeightedSetFamily& family);

/// Total weight of members contained in `query`, by enumerating its subsets.
Weight subset_weight(const WeightedSetFamily& family, SetMask query);

/// For every S subset of `query`: total weight of members H with
/// H & query == S. Index i corresponds to S = expand_bits(i, query).
std::vector<Weight> mobius_restrict(const WeightedSetFamily& family, SetMask query,
                                    const SupersetTable& table);

/// Total weight of members meeting `query`, from its restricted table.
Weight intersect_weight(const WeightedSetFamily& family, SetMask query,
                        std::span<const Weight> restricted);

struct QueryAnswer {
  Weight superset_weight = 0;  ///< members H with Q subset of H
  Weight subset_weight = 0;    ///< members H with H subset of Q
  Weight intersect_weight = 0; ///< members H with H meeting Q

  bool operator==(const QueryAnswer&) const = default;
};

/// How the batched queries are evaluated. `transform` always uses subset
/// enumeration and the Möbius route; `scan` tests every member against every
/// query; `automatic` picks whichever has the smaller operation count.
enum class QueryStrategy { automatic, transform, scan };

std::vector<Weight> superset_weights(const WeightedSetFamily& family,
                                     std::span<const SetMask> queries,
                                     QueryStrategy strategy = QueryStrategy::automatic);
std::vector<Weight> subset_weights(const WeightedSetFamily& family,
                                   std::span<const SetMask> queries,
                                   QueryStrategy strategy = QueryStrategy::automatic);
std::vector<Weight> intersect_weights(const WeightedSetFamily& family,
                                      std::span<const SetMask> queries,
                                      QueryStrategy strategy = QueryStrategy::automatic);

/// All three answers for every query. The superset table is built once and
/// shared across queries.
std::vector<QueryAnswer> batch_queries(const WeightedSetFamily& family,
                                       std::span<const SetMask> queries,
                                       QueryStrategy strategy = QueryStrategy::automatic);

// Subset-lattice transforms over a dense array of length 2^k.

/// f(S) <- sum over T containing S of f(T).
void zeta_superset(std::span<Weight> values);
/// Inverse of zeta_superset.
void mobius_superset(std::span<Weight> values);

/// Compacts the bits of `set` selected by `selector` into the low bits.
SetMask extract_bits(SetMask set, SetMask selector);
/// Inverse of extract_bits: spreads the low bits of `packed` onto `selector`.
SetMask expand_bits(SetMask packed, SetMask selector);

}  // namespace nbr
