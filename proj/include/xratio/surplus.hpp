#pragma once

// Vanishing test: a nonempty sub-multiset U' of quads whose labels span fewer
// than |U'|+3 points forces degree zero. Such a U' exists iff for some
// 3-subset R of labels the bipartite graph quads <-> (labels \ R) has no
// matching saturating the quads (deficiency form of Hall's theorem).

#include <algorithm>
#include <optional>
#include <vector>

#include "xratio/detail/compact.hpp"
#include "xratio/types.hpp"

namespace xratio {
namespace detail {

class HallMatcher {
 public:
  explicit HallMatcher(const std::vector<Mask>& quads) : quads_(quads) {}

  // Returns a Hall violator (quad indices) in the graph with `removed`
  // labels deleted, or an empty vector when the quads can be matched.
  std::vector<int> violator(Mask removed, int m) {
    match_of_label_.assign(m, -1);
    for (int q = 0; q < static_cast<int>(quads_.size()); ++q) {
      seen_labels_ = 0;
      seen_quads_.clear();
      if (!augment(q, removed)) return seen_quads_;
    }
    return {};
  }

 private:
  bool augment(int q, Mask removed) {
    seen_quads_.push_back(q);
    Mask cand = quads_[q] & ~removed & ~seen_labels_;
    while (cand) {
      int l = std::countr_zero(cand);
      cand &= cand - 1;
      seen_labels_ |= bit(l);
      if (match_of_label_[l] == -1 || augment(match_of_label_[l], removed)) {
        match_of_label_[l] = q;
        return true;
      }
      cand &= ~seen_labels_;
    }
    return false;
  }

  const std::vector<Mask>& quads_;
  std::vector<int> match_of_label_;
  std::vector<int> seen_quads_;
  Mask seen_labels_ = 0;
};

inline std::optional<std::vector<int>> surplus_violation(const Compact& c) {
  if (c.quads.empty()) return std::nullopt;
  Mask all = 0;
  for (Mask q : c.quads) all |= q;
  if (popcount(all) < static_cast<int>(c.quads.size()) + 3) {
    std::vector<int> every(c.quads.size());
    for (std::size_t i = 0; i < every.size(); ++i) every[i] = static_cast<int>(i);
    return every;
  }
  HallMatcher matcher(c.quads);
  for (int a = 0; a < c.m; ++a) {
    for (int b = a + 1; b < c.m; ++b) {
      for (int d = b + 1; d < c.m; ++d) {
        auto v = matcher.violator(bit(a) | bit(b) | bit(d), c.m);
        if (!v.empty()) return v;
      }
    }
  }
  return std::nullopt;
}

inline bool surplus_violated(const Compact& c) { return surplus_violation(c).has_value(); }

}  // namespace detail

/// Indices (into inst.quads()) of an inclusion-minimal sub-multiset U' with
/// |union U'| < |U'| + 3, or nullopt when none exists.
inline std::optional<std::vector<std::size_t>> surplus_violated(const DegreeInstance& inst) {
  auto c = detail::compact(inst);
  auto v = detail::surplus_violation(c);
  if (!v) return std::nullopt;
  std::vector<std::size_t> out(v->begin(), v->end());
  std::sort(out.begin(), out.end());
  auto violates = [&](const std::vector<std::size_t>& idx) {
    detail::Mask u = 0;
    for (std::size_t q : idx) u |= c.quads[q];
    return !idx.empty() && detail::popcount(u) < static_cast<int>(idx.size()) + 3;
  };
  for (std::size_t k = out.size(); k-- > 0;) {
    auto smaller = out;
    smaller.erase(smaller.begin() + static_cast<std::ptrdiff_t>(k));
    if (violates(smaller)) out = std::move(smaller);
  }
  return out;
}

}  // namespace xratio
