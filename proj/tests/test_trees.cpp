#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "support/naive.hpp"
#include "xratio/engine.hpp"
#include "xratio/polygon.hpp"
#include "xratio/trees.hpp"

using namespace xratio;

namespace {

using Split = std::set<int>;  // leaf side not containing the smallest leaf

// Leaf labels reachable from vertex `from` without crossing edge `skip`.
std::set<int> leaves_beyond(const MarkedTree& t, std::size_t from, std::size_t skip) {
  std::set<int> out;
  std::vector<std::size_t> stack{from};
  std::set<std::size_t> seen{from};
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto l : t.vertices[v]) {
      if (!l.is_mark()) out.insert(l.raw());
    }
    for (std::size_t e = 0; e < t.edges.size(); ++e) {
      if (e == skip) continue;
      std::size_t other = t.edges[e].a == v ? t.edges[e].b : t.edges[e].b == v ? t.edges[e].a : v;
      if (other != v && seen.insert(other).second) stack.push_back(other);
    }
  }
  return out;
}

// Structural checks; returns the set of leaf splits for distinctness tests.
std::set<Split> check_tree(const DegreeInstance& inst, const MarkedTree& t) {
  std::set<Split> splits;
  EXPECT_EQ(t.edges.size() + 1, t.vertices.size());
  std::multiset<int> halves;
  for (const auto& v : t.vertices) {
    EXPECT_EQ(v.size(), 3u);
    for (auto l : v) halves.insert(l.raw());
  }
  std::multiset<int> want;
  for (auto l : inst.labels()) want.insert(l.raw());
  for (const auto& e : t.edges) {
    EXPECT_TRUE(e.at_a.is_mark() && e.at_b.is_mark());
    want.insert(e.at_a.raw());
    want.insert(e.at_b.raw());
    auto& va = t.vertices[e.a];
    auto& vb = t.vertices[e.b];
    EXPECT_NE(std::find(va.begin(), va.end(), e.at_a), va.end());
    EXPECT_NE(std::find(vb.begin(), vb.end(), e.at_b), vb.end());
  }
  EXPECT_EQ(halves, want);
  std::set<int> everything;
  for (auto l : inst.labels()) everything.insert(l.raw());
  EXPECT_EQ(leaves_beyond(t, 0, t.edges.size()), everything);  // connected
  for (std::size_t e = 0; e < t.edges.size(); ++e) {
    auto side = leaves_beyond(t, t.edges[e].a, e);
    if (side.count(*everything.begin())) {
      Split other;
      for (int l : everything) {
        if (!side.count(l)) other.insert(l);
      }
      side = other;
    }
    splits.insert(side);
  }
  EXPECT_EQ(t.quad_edge.size(), inst.quads().size());
  std::set<std::size_t> used;
  for (std::size_t j = 0; j < inst.quads().size(); ++j) {
    auto e = t.quad_edge[j];
    EXPECT_TRUE(used.insert(e).second);
    auto side = leaves_beyond(t, t.edges[e].a, e);
    int inside = 0;
    for (auto l : inst.quads()[j]) inside += side.count(l.raw());
    EXPECT_EQ(inside, 2) << "quad " << j;
  }
  return splits;
}

}  // namespace

TEST(Trees, SingleQuad) {
  auto inst = DegreeInstance::on_range(4, {{1, 2, 3, 4}});
  auto trees = contributing_trees(inst);
  ASSERT_EQ(trees.size(), 1u);
  check_tree(inst, trees[0]);
  EXPECT_EQ(trees[0].vertices.size(), 2u);
}

TEST(Trees, SnowflakeHasTwoDistinctTrees) {
  auto inst = DegreeInstance::on_range(6, {{6, 1, 2, 3}, {2, 3, 4, 5}, {4, 5, 6, 1}});
  auto trees = contributing_trees(inst);
  ASSERT_EQ(trees.size(), 2u);
  EXPECT_NE(check_tree(inst, trees[0]), check_tree(inst, trees[1]));
}

TEST(Trees, SurplusInstanceStreamsNothing) {
  auto inst = DegreeInstance::on_range(6, {{1, 2, 3, 4}, {1, 2, 3, 4}, {1, 2, 4, 5}});
  int calls = 0;
  EXPECT_EQ(contributing_trees(inst, [&](const MarkedTree&) { ++calls; }), 0u);
  EXPECT_EQ(calls, 0);
}

TEST(Trees, CountEqualsDegreeAndTreesAreDistinct) {
  std::mt19937_64 rng(13);
  DegreeEngine engine;
  int nonzero = 0;
  for (int it = 0; it < 300; ++it) {
    auto inst = naive::random_problem(5 + it % 4, rng).instance();  // m <= 8
    auto trees = contributing_trees(inst);
    ASSERT_EQ(trees.size(), engine.degree(inst)) << it;
    std::set<std::set<Split>> shapes;
    for (const auto& t : trees) shapes.insert(check_tree(inst, t));
    EXPECT_EQ(shapes.size(), trees.size());
    nonzero += !trees.empty();
  }
  EXPECT_GT(nonzero, 60);
}

TEST(Trees, ThirteenGonHasEightTreesWithinTheCap) {
  auto inst = triangulation_to_problem(Triangulation(
                                           13, {{1, 3}, {1, 4}, {1, 10}, {1, 12}, {4, 6}, {4, 9}, {4, 10}, {6, 8}, {6, 9}, {10, 12}}))
                  .instance();
  EXPECT_THROW(contributing_trees(inst), ValidationError);
  TreeOptions opt;
  opt.max_labels = 13;
  auto trees = contributing_trees(inst, opt);
  EXPECT_EQ(trees.size(), 8u);
  for (const auto& t : trees) check_tree(inst, t);
}

TEST(Trees, MaxTreesStopsEarly) {
  auto inst = DegreeInstance::on_range(6, {{6, 1, 2, 3}, {2, 3, 4, 5}, {4, 5, 6, 1}});
  TreeOptions opt;
  opt.max_trees = 1;
  EXPECT_EQ(contributing_trees(inst, opt).size(), 1u);
}
