#include "ragft/rlgr.hpp"

#include <algorithm>
#include <stdexcept>

#include "ragft/bitio.hpp"

namespace ragft {
namespace {

// Fractional adaptation: k = kp >> kShift, kr = krp >> kShift.
constexpr uint32_t kShift = 3;
constexpr uint32_t kpMax = 80;        // caps k and kr at 10
constexpr uint32_t kUpRun = 4;        // full zero run observed
constexpr uint32_t kDownRun = 6;      // run interrupted by a value
constexpr uint32_t kUpGr = 3;         // zero symbol in GR mode
constexpr uint32_t kDownGr = 3;       // nonzero symbol in GR mode
constexpr int kEscapeOnes = 32;       // unary escape to a raw 32-bit value

void golomb_rice_write(BitWriter& bw, uint64_t u, uint32_t k) {
  if (u > 0xffffffffULL)
    throw std::runtime_error("rlgr: symbol magnitude out of range");
  uint64_t q = u >> k;
  if (q >= static_cast<uint64_t>(kEscapeOnes)) {
    bw.put_bits(kEscapeOnes, (1ULL << kEscapeOnes) - 1);
    bw.put_bits(32, u);
  } else {
    bw.put_bits(static_cast<int>(q) + 1, ((1ULL << q) - 1) << 1);
    if (k > 0) bw.put_bits(static_cast<int>(k), u & ((1ULL << k) - 1));
  }
}

uint64_t golomb_rice_read(BitReader& br, uint32_t k) {
  uint64_t q = 0;
  while (q < static_cast<uint64_t>(kEscapeOnes) && br.get_bit()) q++;
  if (q == static_cast<uint64_t>(kEscapeOnes)) return br.get_bits(32);
  return (q << k) | (k > 0 ? br.get_bits(static_cast<int>(k)) : 0);
}

void adapt_kr(uint32_t& krp, uint64_t u) {
  uint64_t p = u >> (krp >> kShift);
  if (p == 0)
    krp = krp >= 2 ? krp - 2 : 0;
  else if (p > 1)
    krp = static_cast<uint32_t>(std::min<uint64_t>(kpMax, krp + p));
}

}  // namespace

std::vector<uint8_t> rlgr_encode(std::span<const int64_t> symbols) {
  BitWriter bw;
  uint32_t kp = 0, krp = 0;
  std::size_t i = 0;
  const std::size_t n = symbols.size();
  while (i < n) {
    uint32_t k = kp >> kShift;
    uint32_t kr = krp >> kShift;
    if (k > 0) {
      uint64_t m = 1ULL << k;
      uint64_t run = 0;
      while (i < n && symbols[i] == 0 && run < m) {
        run++;
        i++;
      }
      if (run == m) {
        bw.put_bit(0);
        kp = std::min(kpMax, kp + kUpRun);
      } else if (i == n) {
        // Partial run at the end of the sequence; the decoder stops on
        // the symbol count, so no terminating value follows.
        bw.put_bit(1);
        bw.put_bits(static_cast<int>(k), run);
      } else {
        bw.put_bit(1);
        bw.put_bits(static_cast<int>(k), run);
        uint64_t u = zigzag_encode(symbols[i]);
        i++;
        golomb_rice_write(bw, u - 1, kr);
        adapt_kr(krp, u - 1);
        kp = kp >= kDownRun ? kp - kDownRun : 0;
      }
    } else {
      uint64_t u = zigzag_encode(symbols[i]);
      i++;
      golomb_rice_write(bw, u, kr);
      adapt_kr(krp, u);
      if (u == 0)
        kp = std::min(kpMax, kp + kUpGr);
      else
        kp = kp >= kDownGr ? kp - kDownGr : 0;
    }
  }
  return bw.finish();
}

std::vector<int64_t> rlgr_decode(std::span<const uint8_t> bytes,
                                 std::size_t count) {
  BitReader br(bytes);
  std::vector<int64_t> out;
  out.reserve(count);
  uint32_t kp = 0, krp = 0;
  while (out.size() < count) {
    uint32_t k = kp >> kShift;
    uint32_t kr = krp >> kShift;
    if (k > 0) {
      if (br.get_bit() == 0) {
        uint64_t m = 1ULL << k;
        if (out.size() + m > count)
          throw std::runtime_error("rlgr: run overflows symbol count");
        out.insert(out.end(), m, 0);
        kp = std::min(kpMax, kp + kUpRun);
      } else {
        uint64_t run = br.get_bits(static_cast<int>(k));
        if (out.size() + run > count)
          throw std::runtime_error("rlgr: run overflows symbol count");
        out.insert(out.end(), run, 0);
        if (out.size() == count) break;  // partial run at end of stream
        uint64_t u = golomb_rice_read(br, kr) + 1;
        out.push_back(zigzag_decode(u));
        adapt_kr(krp, u - 1);
        kp = kp >= kDownRun ? kp - kDownRun : 0;
      }
    } else {
      uint64_t u = golomb_rice_read(br, kr);
      out.push_back(zigzag_decode(u));
      adapt_kr(krp, u);
      if (u == 0)
        kp = std::min(kpMax, kp + kUpGr);
      else
        kp = kp >= kDownGr ? kp - kDownGr : 0;
    }
  }
  return out;
}

}  // namespace ragft
