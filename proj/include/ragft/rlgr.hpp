#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace ragft {

// Adaptive run-length Golomb-Rice coder for signed integer sequences.
// Two backward-adaptive modes: zero-run mode (active while the run
// parameter k > 0) and plain Golomb-Rice mode. Signed values are mapped
// to unsigned by interleaving (0,-1,1,-2,2,... -> 0,1,2,3,4,...).
// Constants are documented in docs/bitstream.md and frozen by the golden
// stream fixture. Losslessness: rlgr_decode(rlgr_encode(s), |s|) == s.
std::vector<uint8_t> rlgr_encode(std::span<const int64_t> symbols);

std::vector<int64_t> rlgr_decode(std::span<const uint8_t> bytes,
                                 std::size_t count);

inline uint64_t zigzag_encode(int64_t v) {
  return (static_cast<uint64_t>(v) << 1) ^ static_cast<uint64_t>(v >> 63);
}

inline int64_t zigzag_decode(uint64_t u) {
  return static_cast<int64_t>((u >> 1) ^ (~(u & 1) + 1));
}

}  // namespace ragft
