#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>

#include "support/naive.hpp"
#include "xratio/engine.hpp"
#include "xratio/polygon.hpp"
#include "xratio/surplus.hpp"

using namespace xratio;

TEST(Surplus, RepeatedQuadIsFound) {
  auto inst = DegreeInstance::on_range(6, {{1, 2, 3, 4}, {1, 2, 3, 4}, {1, 2, 4, 5}});
  auto v = surplus_violated(inst);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(*v, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(degree(inst), 0u);
}

TEST(Surplus, EmptyProblemHasNoViolation) {
  auto inst = DegreeInstance::on_range(3, {});
  EXPECT_FALSE(surplus_violated(inst).has_value());
}

TEST(Surplus, ThirteenGonHasNoViolation) {
  Triangulation f1(13, {{1, 3}, {1, 4}, {1, 10}, {1, 12}, {4, 6}, {4, 9}, {4, 10}, {6, 8}, {6, 9}, {10, 12}});
  EXPECT_FALSE(surplus_violated(triangulation_to_problem(f1).instance()).has_value());
}

TEST(Surplus, UncoveredLabelIsAViolation) {
  // label 6 appears in no quad
  auto inst = DegreeInstance::on_range(6, {{1, 2, 3, 4}, {2, 3, 4, 5}, {1, 3, 4, 5}});
  auto v = surplus_violated(inst);
  ASSERT_TRUE(v.has_value());
  EXPECT_EQ(v->size(), 3u);
}

TEST(Surplus, WitnessSatisfiesTheCondition) {
  std::mt19937_64 rng(11);
  int found = 0;
  for (int it = 0; it < 400; ++it) {
    auto p = naive::random_problem(5 + it % 4, rng);
    auto inst = p.instance();
    auto v = surplus_violated(inst);
    if (!v) continue;
    ++found;
    std::set<Label> u;
    for (auto q : *v) u.insert(inst.quads()[q].begin(), inst.quads()[q].end());
    EXPECT_FALSE(v->empty());
    EXPECT_LT(u.size(), v->size() + 3);
  }
  EXPECT_GT(found, 50);
}

// Hall-deficiency matching agrees with direct subset enumeration. Quads are
// drawn from small label pools so both outcomes are well represented.
TEST(Surplus, HallDeficiencyMatchesSubsetEnumeration) {
  std::mt19937_64 rng(2024);
  int violated = 0, clean = 0;
  for (int it = 0; it < 3000; ++it) {
    const int m = 4 + it % 5;  // 4..8
    std::vector<Quad> quads;
    for (int j = 0; j < m - 3; ++j) {
      int pool = std::uniform_int_distribution<int>(4, m)(rng);
      std::vector<int> lab(pool);
      std::iota(lab.begin(), lab.end(), 1);
      std::shuffle(lab.begin(), lab.end(), rng);
      quads.emplace_back(lab[0], lab[1], lab[2], lab[3]);
    }
    auto inst = DegreeInstance::on_range(m, quads);
    bool hall = surplus_violated(inst).has_value();
    bool brute = naive::surplus_by_subsets(naive::from(inst));
    ASSERT_EQ(hall, brute) << "m=" << m;
    (hall ? violated : clean)++;
  }
  EXPECT_GT(violated, 300);
  EXPECT_GT(clean, 300);
}

TEST(Surplus, ViolationForcesZeroDegree) {
  std::mt19937_64 rng(5);
  DegreeEngine engine;
  for (int it = 0; it < 500; ++it) {
    auto p = naive::random_problem(5 + it % 5, rng);
    if (surplus_violated(p.instance())) EXPECT_EQ(engine.degree(p), 0u);
  }
}
