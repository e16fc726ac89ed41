#include <gtest/gtest.h>

#include <numeric>
#include <random>
#include <set>
#include <thread>

#include "support/naive.hpp"
#include "xratio/cuts.hpp"
#include "xratio/engine.hpp"
#include "xratio/polygon.hpp"

using namespace xratio;

namespace {

CrossRatioProblem snowflake() { return {6, {{6, 1, 2, 3}, {2, 3, 4, 5}, {4, 5, 6, 1}}}; }

CrossRatioProblem thirteen_gon() {
  return triangulation_to_problem(
      Triangulation(13, {{1, 3}, {1, 4}, {1, 10}, {1, 12}, {4, 6}, {4, 9}, {4, 10}, {6, 8}, {6, 9}, {10, 12}}));
}

EngineOptions plain() {
  EngineOptions o;
  o.three_cut = false;
  o.double_cut = false;
  o.memoize = false;
  o.branch = BranchRule::first;
  return o;
}

std::set<int> values(const std::vector<Label>& ls) {
  std::set<int> out;
  for (auto l : ls) out.insert(l.value());
  return out;
}

// `count` random quads on `labels`, each quad drawn uniformly from the pool.
std::vector<Quad> random_quads(std::vector<int> labels, int count, std::mt19937_64& rng) {
  std::vector<Quad> out;
  for (int j = 0; j < count; ++j) {
    std::shuffle(labels.begin(), labels.end(), rng);
    out.emplace_back(labels[0], labels[1], labels[2], labels[3]);
  }
  return out;
}

}  // namespace

TEST(Degree, Examples) {
  EXPECT_EQ(degree(DegreeInstance::on_range(4, {{1, 2, 3, 4}})), 1u);
  EXPECT_EQ(degree(snowflake()), 2u);
  EXPECT_EQ(degree(thirteen_gon()), 8u);
  EXPECT_EQ(degree(CrossRatioProblem{6, {{1, 2, 3, 4}, {1, 2, 3, 4}, {1, 2, 4, 5}}}), 0u);
  EXPECT_EQ(degree(DegreeInstance::on_range(3, {})), 1u);
}

TEST(Degree, AllEngineModesAgreeOnThirteenGon) {
  for (int mask = 0; mask < 16; ++mask) {
    EngineOptions o;
    o.three_cut = mask & 1;
    o.double_cut = mask & 2;
    o.memoize = mask & 4;
    o.branch = mask & 8 ? BranchRule::first : BranchRule::fewest_partitions;
    EXPECT_EQ(DegreeEngine(o).degree(thirteen_gon()), 8u) << mask;
  }
}

TEST(Degree, RejectsInvalidProblem) {
  DegreeEngine e;
  EXPECT_THROW(e.degree(CrossRatioProblem{6, {{1, 2, 3, 4}}}), ValidationError);
  EXPECT_THROW(e.degree(CrossRatioProblem{6, {{1, 2, 3, 4}, {1, 2, 3, 7}, {1, 2, 3, 5}}}), ValidationError);
}

TEST(Degree, AgreesWithNaiveRecursion) {
  std::mt19937_64 rng(7);
  DegreeEngine engine;
  int nonzero = 0;
  for (int it = 0; it < 1500; ++it) {
    auto p = naive::random_problem(5 + it % 5, rng);
    auto d = engine.degree(p);
    ASSERT_EQ(d, naive::degree(p.instance())) << it;
    nonzero += d > 0;
  }
  EXPECT_GT(nonzero, 300);
}

TEST(Degree, ChoiceInvariance) {
  std::mt19937_64 rng(31);
  int checked = 0;
  for (int it = 0; checked < 60 && it < 2000; ++it) {
    auto p = naive::random_problem(5 + it % 4, rng);  // m <= 8
    auto inst = p.instance();
    DegreeEngine engine;
    auto d = engine.degree(inst);
    if (d == 0 && it % 4) continue;
    ++checked;
    for (std::size_t q = 0; q < inst.quads().size(); ++q) {
      for (int s = 0; s < 3; ++s) EXPECT_EQ(engine.degree_with_choice(inst, q, s), d) << it << " " << q << " " << s;
    }
  }
  EXPECT_EQ(checked, 60);
}

TEST(Degree, RelabelingInvariance) {
  std::mt19937_64 rng(8);
  DegreeEngine engine(plain());
  for (int it = 0; it < 200; ++it) {
    int n = 5 + it % 5;
    auto p = naive::random_problem(n, rng);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    EXPECT_EQ(engine.degree(p), engine.degree(naive::relabel(p, perm)));
  }
}

TEST(Degree, UpperBound) {
  std::mt19937_64 rng(12);
  DegreeEngine engine;
  for (int it = 0; it < 3000; ++it) {
    int n = 5 + it % 5;
    EXPECT_LE(engine.degree(naive::random_problem(n, rng)), std::uint64_t{1} << (n - 5));
  }
  for (int n = 5; n <= 9; ++n) {
    enumerate_triangulations(n, [&](const Triangulation& t) {
      EXPECT_LE(engine.degree(triangulation_to_problem(t)), std::uint64_t{1} << (n - 5));
    });
  }
}

TEST(ThreeCut, Examples) {
  auto five = DegreeInstance::on_range(5, {{1, 2, 3, 4}, {1, 2, 3, 5}});
  auto cut = three_cut(five);
  ASSERT_TRUE(cut.has_value());
  EXPECT_EQ(values({cut->core.begin(), cut->core.end()}), (std::set<int>{1, 2, 3}));
  std::set<std::set<int>> sides{values(cut->x), values(cut->y)};
  EXPECT_EQ(sides, (std::set<std::set<int>>{{4}, {5}}));
  EXPECT_FALSE(cut->size_mismatch);
  EXPECT_EQ(degree(*cut->x_side) * degree(*cut->y_side), 1u);
  EXPECT_EQ(degree(five), 1u);

  EXPECT_FALSE(three_cut(snowflake().instance()).has_value());

  auto triple = three_cut(DegreeInstance::on_range(6, {{1, 2, 3, 4}, {1, 2, 3, 4}, {1, 2, 3, 4}}));
  ASSERT_TRUE(triple.has_value());
  EXPECT_TRUE(triple->size_mismatch);
  EXPECT_FALSE(triple->x_side.has_value());
}

TEST(ThreeCut, SidesPartitionTheQuads) {
  std::mt19937_64 rng(4);
  int found = 0;
  for (int it = 0; it < 500; ++it) {
    auto inst = naive::random_problem(6 + it % 4, rng).instance();
    auto cut = three_cut(inst);
    if (!cut) continue;
    ++found;
    EXPECT_FALSE(cut->x.empty());
    EXPECT_FALSE(cut->y.empty());
    EXPECT_EQ(cut->x_quads.size() + cut->y_quads.size(), inst.quads().size());
    auto core = values({cut->core.begin(), cut->core.end()});
    for (auto [idx, side] : {std::pair{&cut->x_quads, &cut->x}, std::pair{&cut->y_quads, &cut->y}}) {
      auto allowed = values(*side);
      allowed.insert(core.begin(), core.end());
      for (auto q : *idx) {
        for (auto l : inst.quads()[q]) EXPECT_TRUE(allowed.count(l.value()));
      }
    }
  }
  EXPECT_GT(found, 50);
}

// Glue two random instances along three shared labels and compare the plain
// recursion (no shortcuts) with the product of the factors.
TEST(ThreeCut, ProductIdentityOnGluedInstances) {
  std::mt19937_64 rng(21);
  DegreeEngine ref(plain());
  int nonzero = 0;
  for (int it = 0; it < 150; ++it) {
    int a = 4 + it % 3, b = 4 + (it / 3) % 3;  // sizes of the two pieces
    std::vector<int> left(a), right{1, 2, 3};
    std::iota(left.begin(), left.end(), 1);
    for (int k = 0; k < b - 3; ++k) right.push_back(a + 1 + k);
    auto ql = random_quads(left, a - 3, rng);
    auto qr = random_quads(right, b - 3, rng);
    std::vector<Quad> all = ql;
    all.insert(all.end(), qr.begin(), qr.end());
    const int m = a + b - 3;
    auto whole = DegreeInstance::on_range(m, all);
    std::vector<Label> ll, rl;
    for (int v : left) ll.push_back(Label::original(v));
    for (int v : right) rl.push_back(Label::original(v));
    std::uint64_t product = ref.degree(DegreeInstance(ll, ql)) * ref.degree(DegreeInstance(rl, qr));
    EXPECT_EQ(ref.degree(whole), product) << it;
    nonzero += product > 0;

    auto cut = three_cut(whole);
    if (cut && !cut->size_mismatch) {
      EXPECT_EQ(ref.degree(whole), ref.degree(*cut->x_side) * ref.degree(*cut->y_side));
    }
  }
  EXPECT_GT(nonzero, 30);
}

TEST(DoubleCut, Snowflake) {
  auto inst = snowflake().instance();
  auto cut = double_cut(inst);
  ASSERT_TRUE(cut.has_value());
  EXPECT_TRUE(cut->x.empty() && cut->y.empty() && cut->z.empty());
  std::set<int> is;
  for (auto l : cut->i) is.insert(l.value());
  EXPECT_EQ(is, (std::set<int>{1, 2, 3, 4, 5, 6}));
  auto s = [&](int k, std::initializer_list<int> pos) {
    std::set<int> want;
    for (int p : pos) want.insert(cut->i[p].value());
    std::set<int> got;
    for (auto l : inst.quads()[cut->quads[k]]) got.insert(l.value());
    EXPECT_EQ(got, want) << k;
  };
  s(0, {0, 1, 2, 3});
  s(1, {2, 3, 4, 5});
  s(2, {0, 1, 4, 5});
  // the exact layout (6,1,2,3,4,5) is one of the valid orientations
  std::set<std::set<int>> pairs{{cut->i[0].value(), cut->i[1].value()},
                                {cut->i[2].value(), cut->i[3].value()},
                                {cut->i[4].value(), cut->i[5].value()}};
  EXPECT_EQ(pairs, (std::set<std::set<int>>{{6, 1}, {2, 3}, {4, 5}}));
  EXPECT_EQ(2 * degree(*cut->x_side) * degree(*cut->y_side) * degree(*cut->z_side), 2u);
}

TEST(DoubleCut, ThirteenGonInnerTriangle) {
  auto p = thirteen_gon();
  auto inst = p.instance();
  std::set<Quad> inner{{3, 4, 9, 10}, {1, 9, 10, 13}, {1, 3, 4, 13}};
  bool seen = false;
  for (const auto& cut : double_cuts(inst)) {
    std::set<Quad> qs;
    for (auto k : cut.quads) qs.insert(inst.quads()[k]);
    if (qs != inner) continue;
    seen = true;
    std::set<std::set<int>> sides{values(cut.x), values(cut.y), values(cut.z)};
    EXPECT_EQ(sides, (std::set<std::set<int>>{{5, 6, 7, 8}, {11, 12}, {2}}));
    // X, Y, Z are attached to S1, S2, S3 in order
    for (auto [side, k] : {std::pair{&cut.x, 0}, std::pair{&cut.y, 1}, std::pair{&cut.z, 2}}) {
      ASSERT_TRUE(!side->empty());
      Label probe = side->front();
      bool touches = false;
      for (const auto& q : inst.quads()) {
        if (q.contains(probe)) {
          for (auto l : inst.quads()[cut.quads[k]]) touches |= q.contains(l);
        }
      }
      EXPECT_TRUE(touches);
    }
    EXPECT_EQ(2 * degree(*cut.x_side) * degree(*cut.y_side) * degree(*cut.z_side), 8u);
  }
  EXPECT_TRUE(seen);
  EXPECT_EQ(double_cuts(inst).size(), 3u);  // one per internal triangle
}

TEST(DoubleCut, AbsentForFiveLabels) {
  std::mt19937_64 rng(1);
  for (int it = 0; it < 50; ++it) EXPECT_FALSE(double_cut(naive::random_problem(5, rng).instance()).has_value());
}

// Glue three random pieces onto S1, S2, S3 and compare the plain recursion
// with twice the product of the pieces.
TEST(DoubleCut, IdentityOnGluedInstances) {
  std::mt19937_64 rng(77);
  DegreeEngine ref(plain());
  const std::array<std::array<int, 4>, 3> s{{{1, 2, 3, 4}, {3, 4, 5, 6}, {1, 2, 5, 6}}};
  int nonzero = 0, identity_checks = 0;
  for (int it = 0; it < 120; ++it) {
    std::array<int, 3> size{it % 3, (it / 3) % 3, (it / 9) % 2};
    int next = 7;
    std::vector<Quad> all;
    std::uint64_t product = 2;
    for (int k = 0; k < 3; ++k) {
      std::vector<int> labels(s[k].begin(), s[k].end());
      for (int j = 0; j < size[k]; ++j) labels.push_back(next++);
      auto qs = random_quads(labels, size[k], rng);
      qs.emplace_back(s[k][0], s[k][1], s[k][2], s[k][3]);
      std::vector<Label> ls;
      for (int v : labels) ls.push_back(Label::original(v));
      product *= ref.degree(DegreeInstance(ls, qs));
      all.insert(all.end(), qs.begin(), qs.end());
    }
    auto whole = DegreeInstance::on_range(next - 1, all);
    EXPECT_EQ(ref.degree(whole), product) << it;
    nonzero += product > 0;
    for (const auto& cut : double_cuts(whole)) {
      if (cut.size_mismatch) continue;
      ++identity_checks;
      EXPECT_EQ(ref.degree(whole), 2 * ref.degree(*cut.x_side) * ref.degree(*cut.y_side) * ref.degree(*cut.z_side));
    }
  }
  EXPECT_GT(nonzero, 20);
  EXPECT_GT(identity_checks, 100);
}

TEST(Engine, OverflowIsAnError) {
  EXPECT_THROW(detail::checked_mul(std::uint64_t{1} << 40, std::uint64_t{1} << 30), std::overflow_error);
  EXPECT_THROW(detail::checked_add(~std::uint64_t{0}, 1), std::overflow_error);
  EXPECT_EQ(detail::checked_mul(3, 5), 15u);
}

TEST(Engine, CacheCapAndStats) {
  EngineOptions o;
  o.cache_cap = 4;
  DegreeEngine capped(o);
  DegreeEngine open;
  std::mt19937_64 rng(3);
  for (int it = 0; it < 200; ++it) {
    auto p = naive::random_problem(7 + it % 4, rng);
    EXPECT_EQ(capped.degree(p), open.degree(p));
    EXPECT_LE(capped.cache_size(), 4u);
  }
  EXPECT_GT(open.cache_size(), 4u);
  auto st = open.stats();
  EXPECT_GT(st.cache_hits + st.cache_misses, 0u);
  EXPECT_GT(st.surplus_prunes, 0u);
  open.clear_cache();
  EXPECT_EQ(open.cache_size(), 0u);

  EngineOptions nomemo;
  nomemo.memoize = false;
  DegreeEngine e(nomemo);
  e.degree(thirteen_gon());
  EXPECT_EQ(e.cache_size(), 0u);
}

TEST(Engine, SharedCacheAcrossThreads) {
  std::vector<CrossRatioProblem> problems;
  std::mt19937_64 rng(19);
  for (int it = 0; it < 400; ++it) problems.push_back(naive::random_problem(6 + it % 5, rng));
  std::vector<std::uint64_t> expect;
  {
    DegreeEngine serial;
    for (const auto& p : problems) expect.push_back(serial.degree(p));
  }
  DegreeEngine shared;
  std::vector<std::uint64_t> got(problems.size());
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < problems.size(); i += 4) got[i] = shared.degree(problems[i]);
    });
  }
  for (auto& th : pool) th.join();
  EXPECT_EQ(got, expect);
}
