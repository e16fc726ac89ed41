#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "xratio/types.hpp"

namespace xratio::detail {

// Label sets as bitmasks over instance-local indices 0..m-1.
using Mask = std::uint32_t;
inline constexpr int kMaxLabels = 32;

inline int popcount(Mask m) { return std::popcount(m); }
inline Mask bit(int i) { return Mask{1} << i; }
inline Mask full_mask(int m) { return m >= 32 ? ~Mask{0} : (bit(m) - 1); }

struct Compact {
  int m = 3;
  std::vector<Mask> quads;
};

inline Compact compact(const DegreeInstance& inst) {
  if (inst.size() > static_cast<std::size_t>(kMaxLabels)) {
    throw ValidationError("instances above 32 labels are not supported");
  }
  Compact c;
  c.m = static_cast<int>(inst.size());
  c.quads.reserve(inst.quads().size());
  for (const Quad& q : inst.quads()) {
    Mask mk = 0;
    for (Label l : q) mk |= bit(static_cast<int>(inst.index_of(l)));
    c.quads.push_back(mk);
  }
  return c;
}

inline std::vector<int> members(Mask m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("degree overflows 64 bits");
  return r;
}

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("degree overflows 64 bits");
  return r;
}

}  // namespace xratio::detail
