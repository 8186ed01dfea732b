#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"

using namespace rectlab;

namespace {

const QTPoly q = QTPoly::q();
const QTPoly t = QTPoly::t();

/// Partition counts by the standard recursion on the largest part.
long count_partitions(int n, int max_part) {
  if (n == 0) return 1;
  long out = 0;
  for (int k = 1; k <= std::min(n, max_part); ++k) out += count_partitions(n - k, k);
  return out;
}

}  // namespace

TEST(Cells, SingleCell) {
  const auto cells = cells_with_arm_leg(Partition{1});
  ASSERT_EQ(cells.size(), 1u);
  EXPECT_EQ(cells[0], (CellStats{0, 0, 0, 0}));
}

TEST(Cells, CornerOfTwoOne) {
  const auto cells = cells_with_arm_leg(Partition{2, 1});
  EXPECT_EQ(cells[0].arm, 1);
  EXPECT_EQ(cells[0].leg, 1);
}

TEST(Cells, CornerOfThreeTwo) {
  const auto cells = cells_with_arm_leg(Partition{3, 2});
  EXPECT_EQ(cells[0].arm, 2);
  EXPECT_EQ(cells[0].leg, 1);
}

TEST(BMu, Examples) {
  EXPECT_EQ(b_mu(Partition{1}), QTPoly(1));
  EXPECT_EQ(b_mu(Partition{2, 1}), QTPoly(1) + q + t);
  EXPECT_EQ(b_mu(Partition{3}), QTPoly(1) + q + q * q);
  EXPECT_TRUE(b_mu(Partition{}).is_zero());
}

TEST(PiMu, Examples) {
  EXPECT_EQ(pi_mu(Partition{1}), QTPoly(1));
  EXPECT_EQ(pi_mu(Partition{}), QTPoly(1));
  EXPECT_EQ(pi_mu(Partition{2}), QTPoly(1) - q);
  EXPECT_EQ(pi_mu(Partition{2, 2}), (QTPoly(1) - q) * (QTPoly(1) - t) * (QTPoly(1) - q * t));
}

TEST(PartitionsOf, SmallCounts) {
  ASSERT_EQ(partitions_of(0).size(), 1u);
  EXPECT_TRUE(partitions_of(0)[0].empty());
  EXPECT_EQ(partitions_of(4).size(), 5u);
  EXPECT_EQ(partitions_of(5).size(), 7u);
}

TEST(PartitionsOf, DistinctValidAndCounted) {
  for (int n = 0; n <= 12; ++n) {
    const auto ps = partitions_of(n);
    EXPECT_EQ(static_cast<long>(ps.size()), count_partitions(n, n));
    std::set<std::vector<int>> seen;
    for (const auto& p : ps) {
      EXPECT_EQ(p.size(), n);
      EXPECT_TRUE(std::is_sorted(p.parts().rbegin(), p.parts().rend()));
      EXPECT_TRUE(seen.insert(p.parts()).second);
    }
    EXPECT_EQ(partitions_of(n), partitions_of(n));
  }
}

TEST(PartitionText, RenderAndParse) {
  EXPECT_EQ(Partition({3, 2}).to_string(), "[3,2]");
  EXPECT_EQ(parse_partition("[3,2,2]"), (Partition{3, 2, 2}));
  EXPECT_EQ(parse_partition("[]"), Partition{});
}

TEST(PartitionStats, ZLambdaAndNStat) {
  EXPECT_EQ(z_lambda(Partition{2}), 2);
  EXPECT_EQ(z_lambda(Partition{1, 1, 1}), 6);
  EXPECT_EQ(z_lambda(Partition{2, 2, 1}), 8);
  EXPECT_EQ(Partition({2, 1}).n_stat(), 1);
  EXPECT_EQ(Partition({1, 1, 1}).n_stat(), 3);
}

// ---- properties ----

TEST(PartitionProperties, CellsCountAndConjugationSwap) {
  for (int n = 1; n <= 8; ++n)
    for (const auto& mu : partitions_of(n)) {
      const auto cells = cells_with_arm_leg(mu);
      ASSERT_EQ(static_cast<int>(cells.size()), n);
      std::multiset<std::array<int, 4>> direct;
      for (const auto& c : cells) direct.insert({c.coleg, c.coarm, c.leg, c.arm});
      std::multiset<std::array<int, 4>> conj;
      for (const auto& c : cells_with_arm_leg(mu.conjugate())) conj.insert({c.coarm, c.coleg, c.arm, c.leg});
      EXPECT_EQ(direct, conj) << mu.to_string();
      EXPECT_EQ(mu.conjugate().conjugate(), mu);
    }
}

TEST(PartitionProperties, ConstantsUnderConjugation) {
  for (int n = 0; n <= 8; ++n)
    for (const auto& mu : partitions_of(n)) {
      EXPECT_EQ(b_mu(mu), b_mu(mu.conjugate()).swap_qt());
      EXPECT_EQ(pi_mu(mu), pi_mu(mu.conjugate()).swap_qt());
      EXPECT_EQ(b_mu(mu).eval(1, 1), n);
    }
}

TEST(PartitionProperties, RandomPartitionsAreValid) {
  oracle::Gen gen(3);
  for (int i = 0; i < 100; ++i) {
    const int n = gen.uniform(1, 12);
    const Partition p = gen.partition(n);
    EXPECT_EQ(p.size(), n);
    EXPECT_EQ(p.conjugate().size(), n);
    EXPECT_EQ(p.conjugate().length(), p[0]);
  }
}
