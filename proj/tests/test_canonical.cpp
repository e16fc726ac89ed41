#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "support/naive.hpp"
#include "xratio/canonical.hpp"

using namespace xratio;

namespace {

// Minimum over every permutation of the sorted relabelled quad masks.
std::vector<std::uint32_t> brute_canonical(const DegreeInstance& inst) {
  const int m = static_cast<int>(inst.size());
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::uint32_t> best;
  bool first = true;
  do {
    std::vector<std::uint32_t> qs;
    for (const auto& q : inst.quads()) {
      std::uint32_t r = 0;
      for (auto l : q) r |= 1u << perm[inst.index_of(l)];
      qs.push_back(r);
    }
    std::sort(qs.begin(), qs.end());
    if (first || qs < best) best = qs;
    first = false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

CrossRatioProblem snowflake() { return {6, {{1, 2, 3, 6}, {2, 3, 4, 5}, {1, 4, 5, 6}}}; }

}  // namespace

TEST(Normalize, DifferentLabelSetsSameShape) {
  auto a = DegreeInstance::on_range(4, {{1, 2, 3, 4}});
  std::vector<Label> labels{Label::original(7), Label::original(9), Label::original(11), Label::original(13)};
  auto b = DegreeInstance(labels, {{7, 9, 11, 13}});
  EXPECT_EQ(normalize(a), normalize(b));
}

TEST(Normalize, SnowflakeRotation) {
  auto rot = naive::relabel(snowflake(), {3, 4, 5, 6, 1, 2});
  EXPECT_EQ(normalize(snowflake().instance()), normalize(rot.instance()));
}

TEST(Normalize, SyntheticMarksAreJustLabels) {
  std::vector<Label> labels{Label::original(1), Label::original(2), Label::original(3), Label::mark(0),
                            Label::mark(1)};
  DegreeInstance with_marks(labels, {Quad(Label::original(1), Label::original(2), Label::mark(0), Label::mark(1)),
                                     Quad(Label::original(1), Label::original(2), Label::original(3), Label::mark(1))});
  auto plain = DegreeInstance::on_range(5, {{1, 2, 4, 5}, {1, 2, 3, 5}});
  EXPECT_EQ(normalize(with_marks), normalize(plain));
}

TEST(Normalize, RandomRelabelingGivesEqualKeys) {
  std::mt19937_64 rng(99);
  for (int it = 0; it < 100; ++it) {
    int n = 5 + it % 8;
    auto p = naive::random_problem(n, rng);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 1);
    std::shuffle(perm.begin(), perm.end(), rng);
    EXPECT_EQ(normalize(p.instance()), normalize(naive::relabel(p, perm).instance()));
  }
}

TEST(Normalize, KeyRoundTripsToAnIsomorphicInstance) {
  std::mt19937_64 rng(3);
  for (int it = 0; it < 50; ++it) {
    auto p = naive::random_problem(6 + it % 5, rng);
    auto key = normalize(p.instance());
    EXPECT_EQ(normalize(instance_from_key(key)), key);
  }
}

// Keys separate exactly the isomorphism classes: compared against brute-force
// minimisation over all m! relabelings.
TEST(Normalize, AgreesWithBruteForceClasses) {
  std::mt19937_64 rng(17);
  for (int it = 0; it < 150; ++it) {
    int n = 5 + it % 3;  // 5..7
    auto a = naive::random_problem(n, rng);
    auto b = naive::random_problem(n, rng);
    if (it % 3 == 0) {
      std::vector<int> perm(n);
      std::iota(perm.begin(), perm.end(), 1);
      std::shuffle(perm.begin(), perm.end(), rng);
      b = naive::relabel(a, perm);
    }
    bool keys_equal = normalize(a.instance()) == normalize(b.instance());
    bool brute_equal = brute_canonical(a.instance()) == brute_canonical(b.instance());
    EXPECT_EQ(keys_equal, brute_equal);
  }
}
