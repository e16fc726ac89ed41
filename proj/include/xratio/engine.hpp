#pragma once

// Exact cross-ratio degrees by boundary splitting.
//
// For a chosen quad S = {i1,i2,i3,i4} and split {i1,i2}|{i3,i4}:
//
//   d(L, U) = sum over admissible L = A1 ⊔ A2 of d(A1 ∪ {*}, U1) * d(A2 ∪ {+}, U2)
//
// where U1 holds the quads meeting A1 in at least three labels (a label of A2
// renamed to the fresh mark *), U2 symmetrically, and only splits with
// |U1| = |A1| - 2 contribute. Instances are pruned by the surplus test and
// factored by three-cuts and double cuts before branching; results are
// memoized on the canonical key.

#include <atomic>
#include <cstdint>
#include <limits>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <utility>

#include "xratio/canonical.hpp"
#include "xratio/cuts.hpp"
#include "xratio/detail/compact.hpp"
#include "xratio/detail/partition.hpp"
#include "xratio/surplus.hpp"
#include "xratio/types.hpp"

namespace xratio {

enum class BranchRule {
  fewest_partitions,  // scan every (quad, split) and branch on the cheapest
  first,              // always the first quad, first split
};

struct EngineOptions {
  bool three_cut = true;
  bool double_cut = true;
  bool memoize = true;
  BranchRule branch = BranchRule::fewest_partitions;
  std::size_t cache_cap = 0;  // entries; 0 = unbounded. The cache is cleared when full.
};

struct EngineStats {
  std::uint64_t cache_hits = 0;
  std::uint64_t cache_misses = 0;
  std::uint64_t surplus_prunes = 0;
  std::uint64_t three_cuts = 0;
  std::uint64_t double_cuts = 0;
  std::uint64_t branches = 0;
};

/// Thread-safe: the memo cache is guarded by a shared mutex, so one engine
/// may be used from several threads at once.
class DegreeEngine {
 public:
  explicit DegreeEngine(EngineOptions options = {}) : options_(options) {}

  std::uint64_t degree(const DegreeInstance& inst) { return solve(detail::compact(inst)); }

  std::uint64_t degree(const CrossRatioProblem& problem) {
    problem.validate();
    return degree(problem.instance());
  }

  /// One boundary-splitting step with the given quad and split (0, 1, 2:
  /// the smallest label of the quad is paired with its 2nd, 3rd or 4th
  /// smallest label); the pieces are then evaluated normally.
  std::uint64_t degree_with_choice(const DegreeInstance& inst, std::size_t quad, int split) {
    auto c = detail::compact(inst);
    if (quad >= c.quads.size() || split < 0 || split > 2) {
      throw std::out_of_range("no such quad/split choice");
    }
    return expand(c, static_cast<int>(quad), split, std::nullopt);
  }

  EngineStats stats() const {
    EngineStats s;
    s.cache_hits = hits_.load();
    s.cache_misses = misses_.load();
    s.surplus_prunes = prunes_.load();
    s.three_cuts = three_cuts_.load();
    s.double_cuts = double_cuts_.load();
    s.branches = branches_.load();
    return s;
  }

  std::size_t cache_size() const {
    std::shared_lock lock(mutex_);
    return cache_.size();
  }

  void clear_cache() {
    std::unique_lock lock(mutex_);
    cache_.clear();
  }

  const EngineOptions& options() const { return options_; }

 private:
  std::uint64_t solve(const detail::Compact& c) {
    if (c.quads.size() + 3 != static_cast<std::size_t>(c.m)) return 0;
    if (c.m <= 4) return 1;
    if (detail::surplus_violated(c)) {
      ++prunes_;
      return 0;
    }
    std::optional<CanonicalKey> key;
    if (options_.memoize) {
      key = detail::canonical_key(c);
      std::shared_lock lock(mutex_);
      auto it = cache_.find(*key);
      if (it != cache_.end()) {
        ++hits_;
        return it->second;
      }
    }
    ++misses_;
    std::uint64_t d = compute(c);
    if (key) {
      std::unique_lock lock(mutex_);
      if (options_.cache_cap && cache_.size() >= options_.cache_cap) cache_.clear();
      cache_.emplace(std::move(*key), d);
    }
    return d;
  }

  std::uint64_t compute(const detail::Compact& c) {
    using detail::checked_mul;
    if (options_.three_cut) {
      if (auto cut = detail::find_three_cut(c)) {
        ++three_cuts_;
        if (cut->size_mismatch()) return 0;
        std::uint64_t dx = solve(cut->x_side(c));
        if (dx == 0) return 0;
        return checked_mul(dx, solve(cut->y_side(c)));
      }
    }
    if (options_.double_cut) {
      if (auto cut = detail::find_double_cut(c)) {
        ++double_cuts_;
        if (cut->size_mismatch()) return 0;
        std::uint64_t d = 2;
        for (int k = 0; k < 3 && d; ++k) d = checked_mul(d, solve(cut->piece(c, k)));
        return d;
      }
    }
    if (options_.branch == BranchRule::first) return expand(c, 0, 0, std::nullopt);

    // Cheapest (quad, split): fewest admissible partitions.
    std::size_t best = std::numeric_limits<std::size_t>::max();
    int best_quad = 0, best_split = 0;
    std::vector<detail::Mask> best_parts;
    for (int q = 0; q < static_cast<int>(c.quads.size()) && best > 0; ++q) {
      for (int s = 0; s < 3 && best > 0; ++s) {
        detail::PartitionEnumerator en(c, q, s);
        std::vector<detail::Mask> parts;
        std::size_t limit = best == std::numeric_limits<std::size_t>::max() ? 0 : best;
        en.run([&](detail::Mask a1) { parts.push_back(a1); }, limit);
        if (parts.size() < best) {
          best = parts.size();
          best_quad = q;
          best_split = s;
          best_parts = std::move(parts);
        }
      }
    }
    return expand(c, best_quad, best_split, std::move(best_parts));
  }

  std::uint64_t expand(const detail::Compact& c, int quad, int split,
                       std::optional<std::vector<detail::Mask>> parts) {
    ++branches_;
    detail::PartitionEnumerator en(c, quad, split);
    if (!parts) parts = en.collect();
    const detail::Mask all = detail::full_mask(c.m);
    std::uint64_t total = 0;
    for (detail::Mask a1 : *parts) {
      const detail::Mask a2 = all & ~a1;
      auto left = detail::sub_instance(c, a1, true, a2, en.side_quads(a1, true));
      std::uint64_t d1 = solve(left);
      if (d1 == 0) continue;
      auto right = detail::sub_instance(c, a2, true, a1, en.side_quads(a1, false));
      std::uint64_t d2 = solve(right);
      total = detail::checked_add(total, detail::checked_mul(d1, d2));
    }
    return total;
  }

  EngineOptions options_;
  mutable std::shared_mutex mutex_;
  std::unordered_map<CanonicalKey, std::uint64_t, CanonicalKeyHash> cache_;
  std::atomic<std::uint64_t> hits_{0}, misses_{0}, prunes_{0}, three_cuts_{0}, double_cuts_{0},
      branches_{0};
};

/// Degree with a fresh default engine.
inline std::uint64_t degree(const DegreeInstance& inst) { return DegreeEngine().degree(inst); }
inline std::uint64_t degree(const CrossRatioProblem& p) { return DegreeEngine().degree(p); }

}  // namespace xratio
