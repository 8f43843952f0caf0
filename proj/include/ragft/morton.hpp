#pragma once

#include <cstdint>

#include "ragft/types.hpp"

namespace ragft {

namespace detail {
// Spread the low 21 bits of v so consecutive bits land 3 apart.
inline uint64_t spread3(uint64_t v) {
  v &= 0x1fffff;
  v = (v | (v << 32)) & 0x1f00000000ffffULL;
  v = (v | (v << 16)) & 0x1f0000ff0000ffULL;
  v = (v | (v << 8)) & 0x100f00f00f00f00fULL;
  v = (v | (v << 4)) & 0x10c30c30c30c30c3ULL;
  v = (v | (v << 2)) & 0x1249249249249249ULL;
  return v;
}
}  // namespace detail

// Z-order key with x in the least significant interleaved position.
// Right-shifting every axis by s shifts the key by 3s, so blocks of any
// power-of-two size are contiguous runs in Morton order.
inline uint64_t morton_code(const Vec3i& c) {
  return detail::spread3(static_cast<uint64_t>(c[0])) |
         (detail::spread3(static_cast<uint64_t>(c[1])) << 1) |
         (detail::spread3(static_cast<uint64_t>(c[2])) << 2);
}

inline bool morton_less(const Vec3i& a, const Vec3i& b) {
  return morton_code(a) < morton_code(b);
}

}  // namespace ragft
