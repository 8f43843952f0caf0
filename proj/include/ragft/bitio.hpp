#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace ragft {

// MSB-first bit writer over a growable byte buffer.
class BitWriter {
 public:
  void put_bit(uint32_t bit) {
    acc_ = (acc_ << 1) | (bit & 1u);
    if (++fill_ == 8) {
      bytes_.push_back(static_cast<uint8_t>(acc_));
      acc_ = 0;
      fill_ = 0;
    }
  }

  void put_bits(int count, uint64_t value) {
    for (int i = count - 1; i >= 0; i--) put_bit(static_cast<uint32_t>(value >> i));
  }

  // Pads the final partial byte with zeros.
  std::vector<uint8_t> finish() {
    if (fill_ > 0) {
      bytes_.push_back(static_cast<uint8_t>(acc_ << (8 - fill_)));
      acc_ = 0;
      fill_ = 0;
    }
    return std::move(bytes_);
  }

  std::size_t bit_count() const { return bytes_.size() * 8 + fill_; }

 private:
  std::vector<uint8_t> bytes_;
  uint32_t acc_ = 0;
  int fill_ = 0;
};

class BitReader {
 public:
  explicit BitReader(std::span<const uint8_t> bytes) : bytes_(bytes) {}

  uint32_t get_bit() {
    if (pos_ >= bytes_.size() * 8)
      throw std::runtime_error("bitio: truncated stream");
    uint32_t bit = (bytes_[pos_ >> 3] >> (7 - (pos_ & 7))) & 1u;
    pos_++;
    return bit;
  }

  uint64_t get_bits(int count) {
    uint64_t v = 0;
    for (int i = 0; i < count; i++) v = (v << 1) | get_bit();
    return v;
  }

 private:
  std::span<const uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace ragft
