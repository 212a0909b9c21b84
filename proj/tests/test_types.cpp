#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "scx/entropy.hpp"
#include "scx/logmath.hpp"
#include "scx/types.hpp"

using namespace scx;

TEST(Types, Counts) {
  EXPECT_EQ(enumerate_types(2, 3).size(), 4u);
  EXPECT_EQ(enumerate_types(1, 17).size(), 1u);
  EXPECT_EQ(enumerate_types(4, 10).size(), 286u);
  EXPECT_EQ(type_count(4, 10), 286u);
  EXPECT_EQ(type_count(3, 0), 1u);
}

TEST(Types, StreamIsLexicographicAndRestartable) {
  TypeStream s(3, 4);
  std::vector<int> c;
  std::vector<std::vector<int>> seen;
  while (s.next(c)) seen.push_back(c);
  ASSERT_EQ(seen.size(), 15u);
  EXPECT_EQ(seen.front(), (std::vector<int>{0, 0, 4}));
  EXPECT_EQ(seen.back(), (std::vector<int>{4, 0, 0}));
  for (std::size_t i = 1; i < seen.size(); ++i) EXPECT_LT(seen[i - 1], seen[i]);
  std::set<std::vector<int>> uniq(seen.begin(), seen.end());
  EXPECT_EQ(uniq.size(), seen.size());
  s.reset();
  ASSERT_TRUE(s.next(c));
  EXPECT_EQ(c, seen.front());
}

TEST(Types, Budget) {
  EXPECT_THROW(check_type_budget(4, 20000), BudgetExceeded);
  int n = max_feasible_n(4);
  EXPECT_LE(type_count(4, n), kTypeBudget);
  EXPECT_GT(type_count(4, n + 1), kTypeBudget);
}

TEST(Types, ClassSize) {
  EXPECT_NEAR(log2_type_class_size({2, 1}), std::log2(3.0), 1e-12);
  EXPECT_NEAR(log2_type_class_size({9, 0, 0}), 0.0, 1e-12);
  EXPECT_NEAR(log2_type_class_size({5, 5}), std::log2(252.0), 1e-12);
}

TEST(Types, IidProb) {
  Dist p({0.75, 0.25});
  EXPECT_NEAR(log2_iid_prob({2, 1}, p), 2 * std::log2(0.75) + std::log2(0.25), 1e-14);
  EXPECT_NEAR(log2_iid_prob({6, 2}, p), -8 * shannon_entropy(p), 1e-12);
  EXPECT_EQ(log2_iid_prob({1, 1}, Dist({1.0, 0.0})), -kInf);
}

TEST(Types, Decompose) {
  TypeDecomposition d1 = decompose(Dist({0.3, 0.7}), 1);
  ASSERT_EQ(d1.records.size(), 2u);
  // records follow the stream order: (0,1) then (1,0)
  EXPECT_NEAR(std::exp2(d1.records[0].log2_mass), 0.7, 1e-14);
  EXPECT_NEAR(std::exp2(d1.records[1].log2_mass), 0.3, 1e-14);
  TypeDecomposition d2 = decompose(Dist::uniform(2), 2);
  ASSERT_EQ(d2.records.size(), 3u);
  EXPECT_NEAR(std::exp2(d2.records[0].log2_mass), 0.25, 1e-14);
  EXPECT_NEAR(std::exp2(d2.records[1].log2_mass), 0.5, 1e-14);
  EXPECT_NEAR(std::exp2(d2.records[2].log2_mass), 0.25, 1e-14);
}

TEST(Types, MassSandwich) {
  Dist p({0.5, 0.3, 0.2});
  const int n = 20;
  double total = 0.0;
  for (const TypeRecord& r : decompose(p, n).records) {
    double d = relative_entropy(r.type.as_dist(), p);
    EXPECT_LE(r.log2_mass, -n * d + 1e-9);
    EXPECT_GE(r.log2_mass, -n * d - 3 * std::log2(n + 1.0) - 1e-9);
    total += std::exp2(r.log2_mass);
  }
  EXPECT_NEAR(total, 1.0, 1e-12);
}
