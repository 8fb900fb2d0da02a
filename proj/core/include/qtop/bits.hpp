#pragma once

#include <bit>
#include <cstdint>
#include <vector>

namespace qtop {

// Subsets of a point universe of size <= 62 are packed into one word.
using Mask = std::uint64_t;

inline Mask bit(int i) { return Mask(1) << i; }
inline bool has(Mask m, int i) { return (m >> i) & 1; }
inline Mask full_mask(int n) { return n == 0 ? 0 : (~Mask(0) >> (64 - n)); }
inline bool subset(Mask a, Mask b) { return (a & ~b) == 0; }
inline int popcount(Mask m) { return std::popcount(m); }
inline int lowest_bit(Mask m) { return std::countr_zero(m); }

inline std::vector<int> mask_to_indices(Mask m) {
  std::vector<int> out;
  while (m) {
    int i = std::countr_zero(m);
    out.push_back(i);
    m &= m - 1;
  }
  return out;
}

inline Mask indices_to_mask(const std::vector<int>& idx) {
  Mask m = 0;
  for (int i : idx) m |= bit(i);
  return m;
}

}  // namespace qtop
