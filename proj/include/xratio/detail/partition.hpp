#pragma once

// Enumeration of the admissible two-part splits used by the boundary
// recursion: for a chosen quad S = {i1,i2 | i3,i4}, all label partitions
// A1 ⊔ A2 with i1,i2 ∈ A1, i3,i4 ∈ A2, no other quad meeting A1 in exactly
// two labels, and |U1| = |A1| - 2 where U1 = quads meeting A1 in >= 3 labels.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "xratio/detail/compact.hpp"

namespace xratio::detail {

/// The three 2|2 splits of a quad: returns (pair kept in A1, pair in A2).
inline std::pair<Mask, Mask> split_of(Mask quad, int split) {
  auto v = members(quad);
  Mask first = bit(v[0]) | bit(v[split + 1]);
  return {first, quad & ~first};
}

/// Builds the instance on `keep` plus (optionally) one synthetic label that
/// stands in for every label of `absorbed`. Labels of `keep` are renumbered
/// in increasing order; the synthetic label gets the last index.
inline Compact sub_instance(const Compact& c, Mask keep, bool with_mark, Mask absorbed,
                            const std::vector<int>& quad_idx) {
  std::array<int, kMaxLabels> map{};
  int next = 0;
  for (int v = 0; v < c.m; ++v) map[v] = (keep & bit(v)) ? next++ : -1;
  Compact out;
  out.m = next + (with_mark ? 1 : 0);
  out.quads.reserve(quad_idx.size());
  for (int q : quad_idx) {
    Mask r = 0;
    for (int v : members(c.quads[q])) {
      if (keep & bit(v)) {
        r |= bit(map[v]);
      } else if (with_mark && (absorbed & bit(v))) {
        r |= bit(next);
      }
    }
    out.quads.push_back(r);
  }
  return out;
}

class PartitionEnumerator {
 public:
  PartitionEnumerator(const Compact& c, int chosen, int split) : c_(c), chosen_(chosen) {
    auto [a1, a2] = split_of(c.quads[chosen], split);
    fixed_a1_ = a1;
    fixed_a2_ = a2;
    incident_.resize(c.m);
    for (int q = 0; q < static_cast<int>(c.quads.size()); ++q) {
      if (q == chosen) continue;
      for (int v : members(c.quads[q])) incident_[v].push_back(q);
    }
    for (int v = 0; v < c.m; ++v) {
      if (!(c.quads[chosen] & bit(v))) free_.push_back(v);
    }
    std::stable_sort(free_.begin(), free_.end(), [&](int a, int b) {
      return incident_[a].size() > incident_[b].size();
    });
  }

  /// Visits each admissible A1 mask; stops once `limit` partitions were seen
  /// (0 = no limit). Returns the number visited.
  std::size_t run(const std::function<void(Mask)>& visit, std::size_t limit = 0) {
    const std::size_t nq = c_.quads.size();
    in_a1_.assign(nq, 0);
    in_a2_.assign(nq, 0);
    for (std::size_t q = 0; q < nq; ++q) {
      if (static_cast<int>(q) == chosen_) continue;
      in_a1_[q] = popcount(c_.quads[q] & fixed_a1_);
      in_a2_[q] = popcount(c_.quads[q] & fixed_a2_);
      if (in_a1_[q] == 2 && in_a2_[q] == 2) return 0;
    }
    visit_ = &visit;
    limit_ = limit;
    found_ = 0;
    dfs(0, fixed_a1_);
    return found_;
  }

  std::size_t count(std::size_t limit = 0) {
    static const std::function<void(Mask)> noop = [](Mask) {};
    return run(noop, limit);
  }

  std::vector<Mask> collect() {
    std::vector<Mask> out;
    run([&](Mask a1) { out.push_back(a1); });
    return out;
  }

  /// Quads (other than the chosen one) landing on the A1 side.
  std::vector<int> side_quads(Mask a1, bool first_side) const {
    std::vector<int> out;
    for (int q = 0; q < static_cast<int>(c_.quads.size()); ++q) {
      if (q == chosen_) continue;
      int k = popcount(c_.quads[q] & a1);
      if (first_side ? k >= 3 : k <= 1) out.push_back(q);
    }
    return out;
  }

 private:
  bool feasible(int depth, Mask a1) const {
    int low_u1 = 0, high_u1 = 0;
    for (std::size_t q = 0; q < in_a1_.size(); ++q) {
      if (static_cast<int>(q) == chosen_) continue;
      if (in_a1_[q] >= 3) ++low_u1;
      if (in_a2_[q] <= 1) ++high_u1;
    }
    int cur = popcount(a1);
    int hi = cur + static_cast<int>(free_.size()) - depth;
    // need |A1| - 2 = |U1| for some |A1| in [cur, hi], |U1| in [low, high]
    return low_u1 + 2 <= hi && high_u1 + 2 >= cur;
  }

  bool assign(int v, bool to_a1) {
    bool ok = true;
    for (int q : incident_[v]) {
      (to_a1 ? in_a1_[q] : in_a2_[q])++;
      if (in_a1_[q] == 2 && in_a2_[q] == 2) ok = false;
    }
    return ok;
  }

  void unassign(int v, bool to_a1) {
    for (int q : incident_[v]) (to_a1 ? in_a1_[q] : in_a2_[q])--;
  }

  void dfs(int depth, Mask a1) {
    if (limit_ && found_ >= limit_) return;
    if (!feasible(depth, a1)) return;
    if (depth == static_cast<int>(free_.size())) {
      int u1 = 0;
      for (std::size_t q = 0; q < in_a1_.size(); ++q) {
        if (static_cast<int>(q) != chosen_ && in_a1_[q] >= 3) ++u1;
      }
      if (u1 + 2 == popcount(a1)) {
        ++found_;
        (*visit_)(a1);
      }
      return;
    }
    int v = free_[depth];
    for (bool to_a1 : {true, false}) {
      if (assign(v, to_a1)) dfs(depth + 1, to_a1 ? (a1 | bit(v)) : a1);
      unassign(v, to_a1);
    }
  }

  const Compact& c_;
  int chosen_;
  Mask fixed_a1_ = 0, fixed_a2_ = 0;
  std::vector<std::vector<int>> incident_;
  std::vector<int> free_;
  std::vector<int> in_a1_, in_a2_;
  const std::function<void(Mask)>* visit_ = nullptr;
  std::size_t limit_ = 0;
  std::size_t found_ = 0;
};

}  // namespace xratio::detail
