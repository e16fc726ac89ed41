#pragma once

// Canonical form of a quad multiset under all label bijections, used as the
// memoization key. Colour refinement on incidence signatures, then
// individualization of the first non-singleton cell; the lexicographically
// least relabelled quad multiset over all leaves is the key.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "xratio/detail/compact.hpp"
#include "xratio/types.hpp"

namespace xratio {

struct CanonicalKey {
  int m = 3;
  std::vector<detail::Mask> quads;  // sorted, over labels 0..m-1

  friend bool operator==(const CanonicalKey&, const CanonicalKey&) = default;
  friend auto operator<=>(const CanonicalKey&, const CanonicalKey&) = default;
};

struct CanonicalKeyHash {
  std::size_t operator()(const CanonicalKey& k) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(k.m);
    for (detail::Mask q : k.quads) {
      h ^= q + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdull;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
  }
};

namespace detail {

class Canonicalizer {
 public:
  explicit Canonicalizer(const Compact& c) : c_(c), incident_(c.m) {
    for (int q = 0; q < static_cast<int>(c.quads.size()); ++q) {
      for (int v : members(c.quads[q])) incident_[v].push_back(q);
    }
  }

  CanonicalKey run() {
    std::vector<int> colour(c_.m, 0);
    refine(colour);
    search(colour);
    return CanonicalKey{c_.m, *best_};
  }

 private:
  // colour[v] = number of labels in strictly smaller cells; equal colours share a cell.
  void refine(std::vector<int>& colour) const {
    const int m = c_.m;
    std::vector<std::vector<std::uint64_t>> sig(m);
    std::vector<int> order(m);
    int cells = count_cells(colour);
    for (;;) {
      for (int v = 0; v < m; ++v) {
        auto& s = sig[v];
        s.clear();
        s.push_back(static_cast<std::uint64_t>(colour[v]));
        for (int q : incident_[v]) {
          int others[3], k = 0;
          for (int w : members(c_.quads[q] & ~bit(v))) others[k++] = colour[w];
          std::sort(others, others + 3);
          s.push_back(1 + ((static_cast<std::uint64_t>(others[0]) << 16) |
                           (static_cast<std::uint64_t>(others[1]) << 8) |
                           static_cast<std::uint64_t>(others[2])));
        }
        std::sort(s.begin() + 1, s.end());
      }
      for (int v = 0; v < m; ++v) order[v] = v;
      std::sort(order.begin(), order.end(), [&](int a, int b) { return sig[a] < sig[b]; });
      std::vector<int> next(m);
      for (int i = 0; i < m; ++i) {
        int v = order[i];
        next[v] = (i > 0 && sig[order[i - 1]] == sig[v]) ? next[order[i - 1]] : i;
      }
      colour.swap(next);
      int now = count_cells(colour);
      if (now == cells) return;
      cells = now;
    }
  }

  static int count_cells(const std::vector<int>& colour) {
    std::vector<int> c = colour;
    std::sort(c.begin(), c.end());
    return static_cast<int>(std::unique(c.begin(), c.end()) - c.begin());
  }

  void search(const std::vector<int>& colour) {
    const int m = c_.m;
    std::vector<int> size(m, 0);
    for (int v = 0; v < m; ++v) ++size[colour[v]];
    int target = -1;
    for (int col = 0; col < m; ++col) {
      if (size[col] > 1) {
        target = col;
        break;
      }
    }
    if (target == -1) {
      std::vector<Mask> relabelled;
      relabelled.reserve(c_.quads.size());
      for (Mask q : c_.quads) {
        Mask r = 0;
        for (int v : members(q)) r |= bit(colour[v]);
        relabelled.push_back(r);
      }
      std::sort(relabelled.begin(), relabelled.end());
      if (!best_ || relabelled < *best_) best_ = std::move(relabelled);
      return;
    }
    for (int v = 0; v < m; ++v) {
      if (colour[v] != target) continue;
      std::vector<int> child = colour;
      for (int w = 0; w < m; ++w) {
        if (w != v && colour[w] == target) child[w] = target + 1;
      }
      refine(child);
      search(child);
    }
  }

  const Compact& c_;
  std::vector<std::vector<int>> incident_;
  std::optional<std::vector<Mask>> best_;
};

inline CanonicalKey canonical_key(const Compact& c) { return Canonicalizer(c).run(); }

}  // namespace detail

/// Key invariant under label bijections; equal keys iff the instances are
/// related by a bijection.
inline CanonicalKey normalize(const DegreeInstance& inst) {
  return detail::canonical_key(detail::compact(inst));
}

/// The instance a key stands for, on labels 1..m.
inline DegreeInstance instance_from_key(const CanonicalKey& key) {
  std::vector<Quad> quads;
  for (detail::Mask q : key.quads) {
    auto v = detail::members(q);
    quads.emplace_back(v[0] + 1, v[1] + 1, v[2] + 1, v[3] + 1);
  }
  return DegreeInstance::on_range(key.m, std::move(quads));
}

}  // namespace xratio
