#include <random>

#include "doctest.h"

#include "nbr/error.hpp"
#include "nbr/set_family.hpp"
#include "oracles.hpp"

using namespace nbr;

namespace {

constexpr SetMask bit(int i) { return SetMask{1} << i; }

using Members = std::vector<std::pair<SetMask, Weight>>;

// {1}:1 and {1,2}:1 over a 3-element universe.
WeightedSetFamily small_family() {
  const Members m = {{bit(1), 1}, {bit(1) | bit(2), 1}};
  return WeightedSetFamily::build(m, 3);
}

Members random_members(std::mt19937_64& rng, int universe, int count) {
  std::uniform_int_distribution<SetMask> mask(0, (SetMask{1} << universe) - 1);
  std::uniform_int_distribution<Weight> weight(1, 5);
  Members m;
  for (int i = 0; i < count; ++i) m.emplace_back(mask(rng), weight(rng));
  return m;
}

}  // namespace

TEST_SUITE("set_family") {
  TEST_CASE("build") {
    auto f = small_family();
    CHECK(f.size() == 2);
    CHECK(f.total_weight() == 2);
    CHECK(f.max_card() == 2);

    const Members dup = {{bit(1), 1}, {bit(1), 2}};
    auto merged = WeightedSetFamily::build(dup, 3);
    CHECK(merged.size() == 1);
    CHECK(merged.weight_of(bit(1)) == 3);

    auto empty = WeightedSetFamily::build({}, 3);
    CHECK(empty.total_weight() == 0);
    CHECK(empty.max_card() == 0);

    const Members zero = {{bit(0), 0}};
    CHECK(WeightedSetFamily::build(zero, 3).size() == 0);
  }

  TEST_CASE("build errors") {
    const Members outside = {{bit(3), 1}};
    CHECK_THROWS_AS(WeightedSetFamily::build(outside, 3), ConfigError);
    CHECK_THROWS_AS(WeightedSetFamily::build({}, 65), ConfigError);
    const Members negative = {{bit(0), -1}};
    CHECK_THROWS_AS(WeightedSetFamily::build(negative, 3), ConfigError);
    CHECK_NOTHROW(WeightedSetFamily::build({}, 64));
  }

  TEST_CASE("superset table") {
    auto table = superset_weight_table(small_family());
    CHECK(table.at(0) == 2);
    CHECK(table.at(bit(1)) == 2);
    CHECK(table.at(bit(2)) == 1);
    CHECK(table.at(bit(1) | bit(2)) == 1);
    CHECK(table.count(bit(0)) == 0);

    CHECK(superset_weight_table(WeightedSetFamily::build({}, 4)).empty());

    const Members single = {{0b111, 5}};
    auto full = superset_weight_table(WeightedSetFamily::build(single, 3));
    CHECK(full.size() == 8);
    for (SetMask s = 0; s < 8; ++s) CHECK(full.at(s) == 5);
  }

  TEST_CASE("subset weight") {
    auto f = small_family();
    CHECK(subset_weight(f, bit(1) | bit(2)) == 2);
    CHECK(subset_weight(f, 0) == 0);
    CHECK(subset_weight(f, f.universe_mask()) == f.total_weight());
  }

  TEST_CASE("mobius restrict and intersect") {
    auto f = small_family();
    auto table = superset_weight_table(f);
    const SetMask q = bit(1) | bit(2);
    auto w = mobius_restrict(f, q, table);
    REQUIRE(w.size() == 4);
    CHECK(w[extract_bits(0, q)] == 0);
    CHECK(w[extract_bits(bit(1), q)] == 1);
    CHECK(w[extract_bits(bit(2), q)] == 0);
    CHECK(w[extract_bits(q, q)] == 1);

    auto empty_q = mobius_restrict(f, 0, table);
    REQUIRE(empty_q.size() == 1);
    CHECK(empty_q[0] == f.total_weight());
    CHECK(intersect_weight(f, 0, empty_q) == 0);

    const SetMask q2 = bit(2);
    CHECK(intersect_weight(f, q2, mobius_restrict(f, q2, table)) == 1);

    const Members with_empty = {{0, 4}, {bit(0), 1}, {bit(1), 2}};
    auto g = WeightedSetFamily::build(with_empty, 2);
    auto gt = superset_weight_table(g);
    CHECK(intersect_weight(g, 0b11, mobius_restrict(g, 0b11, gt)) == g.total_weight() - 4);
  }

  TEST_CASE("batch queries") {
    auto f = small_family();
    const SetMask qs[] = {bit(1), bit(2)};
    for (auto strategy : {QueryStrategy::automatic, QueryStrategy::transform, QueryStrategy::scan}) {
      auto a = batch_queries(f, qs, strategy);
      REQUIRE(a.size() == 2);
      CHECK(a[0] == QueryAnswer{2, 1, 2});
      CHECK(a[1] == QueryAnswer{1, 0, 1});
      CHECK(batch_queries(f, {}, strategy).empty());
    }
    const SetMask bad[] = {bit(5)};
    CHECK_THROWS_AS(batch_queries(f, bad), ConfigError);
  }

  TEST_CASE("bit compaction round-trips") {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 1000; ++i) {
      const SetMask sel = rng();
      const SetMask set = rng() & sel;
      const SetMask packed = extract_bits(set, sel);
      CHECK(packed < (std::popcount(sel) == 64 ? ~SetMask{0} : (SetMask{1} << std::popcount(sel))));
      CHECK(expand_bits(packed, sel) == set);
    }
  }

  TEST_CASE("zeta then mobius is the identity") {
    std::mt19937_64 rng(3);
    for (int k = 0; k <= 10; ++k) {
      std::vector<Weight> values(std::size_t{1} << k);
      for (auto& v : values) v = static_cast<Weight>(rng() % 100) - 50;
      auto copy = values;
      zeta_superset(copy);
      for (SetMask s = 0; s < values.size(); ++s) {
        Weight sum = 0;
        for (SetMask t = 0; t < values.size(); ++t)
          if ((t & s) == s) sum += values[t];
        CHECK(copy[s] == sum);
      }
      mobius_superset(copy);
      CHECK(copy == values);
    }
  }

  TEST_CASE("all strategies match direct sums on random families") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 60; ++trial) {
      const int u = 1 + static_cast<int>(rng() % 16);
      auto members = random_members(rng, u, static_cast<int>(rng() % 100));
      auto f = WeightedSetFamily::build(members, u);
      std::vector<SetMask> qs;
      for (int i = 0; i < 30; ++i) qs.push_back(rng() & f.universe_mask());
      for (auto strategy : {QueryStrategy::automatic, QueryStrategy::transform, QueryStrategy::scan}) {
        auto answers = batch_queries(f, qs, strategy);
        auto sup = superset_weights(f, qs, strategy);
        auto sub = subset_weights(f, qs, strategy);
        auto inter = intersect_weights(f, qs, strategy);
        for (std::size_t i = 0; i < qs.size(); ++i) {
          auto want = oracle::family_sums(members, qs[i]);
          CHECK(answers[i] == QueryAnswer{want.superset, want.subset, want.intersect});
          CHECK(sup[i] == want.superset);
          CHECK(sub[i] == want.subset);
          CHECK(inter[i] == want.intersect);
        }
      }
    }
  }

  TEST_CASE("exhaustive families over u <= 3") {
    // Every family with weights in {0,1,2} over every subset, u <= 2, plus
    // every 0/1 family at u = 3; queries over every subset.
    for (int u = 0; u <= 3; ++u) {
      const int subsets = 1 << u;
      const int base = u <= 2 ? 3 : 2;
      long families = 1;
      for (int i = 0; i < subsets; ++i) families *= base;
      for (long code = 0; code < families; ++code) {
        Members m;
        long c = code;
        for (int s = 0; s < subsets; ++s) {
          if (c % base) m.emplace_back(static_cast<SetMask>(s), c % base);
          c /= base;
        }
        auto f = WeightedSetFamily::build(m, u);
        std::vector<SetMask> qs;
        for (int q = 0; q < subsets; ++q) qs.push_back(static_cast<SetMask>(q));
        auto answers = batch_queries(f, qs, QueryStrategy::transform);
        for (int q = 0; q < subsets; ++q) {
          auto want = oracle::family_sums(m, static_cast<SetMask>(q));
          CHECK(answers[q] == QueryAnswer{want.superset, want.subset, want.intersect});
        }
      }
    }
  }

  TEST_CASE("exhaustive 0/1 families at u = 4") {
    for (std::uint32_t code = 0; code < (1u << 16); code += 7) {
      Members m;
      for (int s = 0; s < 16; ++s)
        if ((code >> s) & 1) m.emplace_back(static_cast<SetMask>(s), 1);
      auto f = WeightedSetFamily::build(m, 4);
      std::vector<SetMask> qs(16);
      for (int q = 0; q < 16; ++q) qs[q] = static_cast<SetMask>(q);
      auto answers = batch_queries(f, qs, QueryStrategy::transform);
      for (int q = 0; q < 16; ++q) {
        auto want = oracle::family_sums(m, qs[q]);
        REQUIRE(answers[q] == QueryAnswer{want.superset, want.subset, want.intersect});
      }
    }
  }

  TEST_CASE("partition identity and monotonicity") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
      const int u = 8;
      auto f = WeightedSetFamily::build(random_members(rng, u, 40), u);
      auto table = superset_weight_table(f);
      for (int i = 0; i < 10; ++i) {
        const SetMask q = rng() & f.universe_mask();
        auto w = mobius_restrict(f, q, table);
        Weight sum = 0;
        for (auto x : w) {
          CHECK(x >= 0);
          sum += x;
        }
        CHECK(sum == f.total_weight());

        const SetMask s = q & rng();
        CHECK(table[s] >= table[q]);
        CHECK(subset_weight(f, s) <= subset_weight(f, q));
        auto a = batch_queries(f, std::span<const SetMask>(&q, 1))[0];
        CHECK(a.superset_weight <= f.total_weight());
        CHECK(a.subset_weight <= f.total_weight());
        CHECK(a.intersect_weight <= f.total_weight());
      }
    }
  }
}
