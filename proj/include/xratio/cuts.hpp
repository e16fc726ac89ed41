#pragma once

// Factorizations that split an instance into independent pieces.
//
// Three-cut: labels = R ⊔ X ⊔ Y with |R| = 3 and every quad inside R∪X or
// R∪Y. The degree is d(R∪X) * d(R∪Y) when |U_X| = |X|, and zero otherwise.
//
// Double cut: three quads S1 = {i1,i2,i3,i4}, S2 = {i3,i4,i5,i6},
// S3 = {i1,i2,i5,i6} and a partition of the remaining labels into X, Y, Z
// with every quad inside X∪S1, Y∪S2 or Z∪S3. The degree is
// 2 * d(X∪S1) * d(Y∪S2) * d(Z∪S3).

#include <array>
#include <numeric>
#include <optional>
#include <vector>

#include "xratio/detail/compact.hpp"
#include "xratio/detail/partition.hpp"
#include "xratio/types.hpp"

namespace xratio {
namespace detail {

struct CompactThreeCut {
  Mask core = 0;
  Mask x = 0, y = 0;
  std::vector<int> x_quads, y_quads;
  bool size_mismatch() const { return static_cast<int>(x_quads.size()) != popcount(x); }
  Compact x_side(const Compact& c) const { return sub_instance(c, core | x, false, 0, x_quads); }
  Compact y_side(const Compact& c) const { return sub_instance(c, core | y, false, 0, y_quads); }
};

// Connected components of `labels` where two labels are joined when some
// quad contains both. Returned as masks ordered by lowest member.
inline std::vector<Mask> components(const Compact& c, Mask labels) {
  std::array<int, kMaxLabels> parent{};
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (Mask q : c.quads) {
    Mask part = q & labels;
    if (!part) continue;
    int first = std::countr_zero(part);
    for (int v : members(part)) parent[find(v)] = find(first);
  }
  std::array<Mask, kMaxLabels> by_root{};
  for (int v : members(labels)) by_root[find(v)] |= bit(v);
  std::vector<Mask> out;
  for (Mask comp : by_root) {
    if (comp) out.push_back(comp);
  }
  std::sort(out.begin(), out.end(), [](Mask a, Mask b) { return std::countr_zero(a) < std::countr_zero(b); });
  return out;
}

inline std::optional<CompactThreeCut> find_three_cut(const Compact& c) {
  if (c.m < 5) return std::nullopt;
  const Mask all = full_mask(c.m);
  for (int a = 0; a < c.m; ++a) {
    for (int b = a + 1; b < c.m; ++b) {
      for (int d = b + 1; d < c.m; ++d) {
        Mask core = bit(a) | bit(b) | bit(d);
        auto comps = components(c, all & ~core);
        if (comps.size() < 2) continue;
        // Smallest component on the X side.
        std::size_t pick = 0;
        for (std::size_t i = 1; i < comps.size(); ++i) {
          if (popcount(comps[i]) < popcount(comps[pick])) pick = i;
        }
        CompactThreeCut cut;
        cut.core = core;
        cut.x = comps[pick];
        cut.y = all & ~core & ~cut.x;
        for (int q = 0; q < static_cast<int>(c.quads.size()); ++q) {
          (c.quads[q] & cut.x ? cut.x_quads : cut.y_quads).push_back(q);
        }
        return cut;
      }
    }
  }
  return std::nullopt;
}

struct CompactDoubleCut {
  std::array<int, 3> s{};        // quad indices of S1, S2, S3
  std::array<int, 6> i{};        // i1..i6
  std::array<Mask, 3> side{};    // X, Y, Z
  std::array<std::vector<int>, 3> quads;  // U_X, U_Y, U_Z (each includes its S_k)

  bool size_mismatch() const {
    for (int k = 0; k < 3; ++k) {
      if (static_cast<int>(quads[k].size()) != popcount(side[k]) + 1) return true;
    }
    return false;
  }
  Compact piece(const Compact& c, int k) const {
    return sub_instance(c, side[k] | c.quads[s[k]], false, 0, quads[k]);
  }
};

// Tries the triple (s1, s2, s3) in that role order.
inline std::optional<CompactDoubleCut> try_double_cut(const Compact& c, int s1, int s2, int s3) {
  const Mask q1 = c.quads[s1], q2 = c.quads[s2], q3 = c.quads[s3];
  const Mask p12 = q1 & q2, p23 = q2 & q3, p13 = q1 & q3;
  if (popcount(p12) != 2 || popcount(p23) != 2 || popcount(p13) != 2) return std::nullopt;
  if (p12 & p23) return std::nullopt;
  const Mask six = q1 | q2 | q3;
  const Mask rest = full_mask(c.m) & ~six;
  const std::array<Mask, 3> sk{q1, q2, q3};
  const std::array<int, 3> chosen{s1, s2, s3};

  auto allowed_for = [&](Mask q) {
    int allowed = 0;
    for (int k = 0; k < 3; ++k) {
      if (((q & six) & ~sk[k]) == 0) allowed |= 1 << k;
    }
    return allowed;
  };

  auto comps = components(c, rest);
  std::vector<int> comp_allowed(comps.size(), 7);
  std::vector<int> quad_side(c.quads.size(), -1);
  for (int k = 0; k < 3; ++k) quad_side[chosen[k]] = k;
  for (int q = 0; q < static_cast<int>(c.quads.size()); ++q) {
    if (quad_side[q] != -1) continue;
    int allowed = allowed_for(c.quads[q]);
    if (!(c.quads[q] & rest)) {
      if (!allowed) return std::nullopt;
      quad_side[q] = std::countr_zero(static_cast<unsigned>(allowed));
      continue;
    }
    for (std::size_t j = 0; j < comps.size(); ++j) {
      if (c.quads[q] & comps[j]) comp_allowed[j] &= allowed;
    }
  }
  CompactDoubleCut cut;
  cut.s = chosen;
  for (std::size_t j = 0; j < comps.size(); ++j) {
    if (!comp_allowed[j]) return std::nullopt;
    int k = std::countr_zero(static_cast<unsigned>(comp_allowed[j]));
    cut.side[k] |= comps[j];
  }
  for (int q = 0; q < static_cast<int>(c.quads.size()); ++q) {
    int k = quad_side[q];
    if (k == -1) {
      for (int j = 0; j < 3; ++j) {
        if (c.quads[q] & cut.side[j]) k = j;
      }
    }
    cut.quads[k].push_back(q);
  }
  auto put = [](Mask pair, int* out) {
    auto v = members(pair);
    out[0] = v[0], out[1] = v[1];
  };
  put(p13, &cut.i[0]);
  put(p12, &cut.i[2]);
  put(p23, &cut.i[4]);
  return cut;
}

inline std::vector<CompactDoubleCut> find_double_cuts(const Compact& c, bool first_only = false) {
  std::vector<CompactDoubleCut> out;
  const int nq = static_cast<int>(c.quads.size());
  for (int a = 0; a < nq; ++a) {
    for (int b = a + 1; b < nq; ++b) {
      if (popcount(c.quads[a] & c.quads[b]) != 2) continue;
      for (int d = b + 1; d < nq; ++d) {
        if (auto cut = try_double_cut(c, a, b, d)) {
          out.push_back(std::move(*cut));
          if (first_only) return out;
        }
      }
    }
  }
  return out;
}

inline std::optional<CompactDoubleCut> find_double_cut(const Compact& c) {
  auto all = find_double_cuts(c, true);
  if (all.empty()) return std::nullopt;
  return std::move(all.front());
}

}  // namespace detail

namespace detail {

inline std::vector<Label> labels_of(const DegreeInstance& inst, Mask m) {
  std::vector<Label> out;
  for (int v : members(m)) out.push_back(inst.labels()[v]);
  return out;
}

inline DegreeInstance restrict_instance(const DegreeInstance& inst, Mask keep,
                                        const std::vector<int>& quad_idx) {
  std::vector<Quad> quads;
  for (int q : quad_idx) quads.push_back(inst.quads()[q]);
  return DegreeInstance(labels_of(inst, keep), std::move(quads));
}

}  // namespace detail

struct ThreeCut {
  std::array<Label, 3> core{};
  std::vector<Label> x, y;
  std::vector<std::size_t> x_quads, y_quads;  // indices into the instance's quads
  bool size_mismatch = false;                 // |U_X| != |X|: degree is zero
  std::optional<DegreeInstance> x_side, y_side;
};

inline std::optional<ThreeCut> three_cut(const DegreeInstance& inst) {
  auto c = detail::compact(inst);
  auto cut = detail::find_three_cut(c);
  if (!cut) return std::nullopt;
  ThreeCut out;
  auto core = detail::labels_of(inst, cut->core);
  std::copy(core.begin(), core.end(), out.core.begin());
  out.x = detail::labels_of(inst, cut->x);
  out.y = detail::labels_of(inst, cut->y);
  out.x_quads.assign(cut->x_quads.begin(), cut->x_quads.end());
  out.y_quads.assign(cut->y_quads.begin(), cut->y_quads.end());
  out.size_mismatch = cut->size_mismatch();
  if (!out.size_mismatch) {
    out.x_side = detail::restrict_instance(inst, cut->core | cut->x, cut->x_quads);
    out.y_side = detail::restrict_instance(inst, cut->core | cut->y, cut->y_quads);
  }
  return out;
}

struct DoubleCut {
  std::array<std::size_t, 3> quads{};  // S1, S2, S3 as indices into the instance's quads
  std::array<Label, 6> i{};
  std::vector<Label> x, y, z;
  bool size_mismatch = false;
  std::optional<DegreeInstance> x_side, y_side, z_side;  // on X∪S1, Y∪S2, Z∪S3
};

namespace detail {

inline DoubleCut to_public(const DegreeInstance& inst, const Compact& c, const CompactDoubleCut& cut) {
  DoubleCut out;
  for (int k = 0; k < 3; ++k) out.quads[k] = static_cast<std::size_t>(cut.s[k]);
  for (int k = 0; k < 6; ++k) out.i[k] = inst.labels()[cut.i[k]];
  out.x = labels_of(inst, cut.side[0]);
  out.y = labels_of(inst, cut.side[1]);
  out.z = labels_of(inst, cut.side[2]);
  out.size_mismatch = cut.size_mismatch();
  if (!out.size_mismatch) {
    std::array<std::optional<DegreeInstance>*, 3> dst{&out.x_side, &out.y_side, &out.z_side};
    for (int k = 0; k < 3; ++k) {
      *dst[k] = restrict_instance(inst, cut.side[k] | c.quads[cut.s[k]], cut.quads[k]);
    }
  }
  return out;
}

}  // namespace detail

inline std::optional<DoubleCut> double_cut(const DegreeInstance& inst) {
  auto c = detail::compact(inst);
  auto cut = detail::find_double_cut(c);
  if (!cut) return std::nullopt;
  return detail::to_public(inst, c, *cut);
}

inline std::vector<DoubleCut> double_cuts(const DegreeInstance& inst) {
  auto c = detail::compact(inst);
  std::vector<DoubleCut> out;
  for (const auto& cut : detail::find_double_cuts(c)) out.push_back(detail::to_public(inst, c, cut));
  return out;
}

}  // namespace xratio
