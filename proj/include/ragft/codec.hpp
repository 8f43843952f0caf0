#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ragft/hierarchy.hpp"
#include "ragft/spectral.hpp"
#include "ragft/transforms.hpp"
#include "ragft/types.hpp"

namespace ragft {

// Uniform quantizer, round half away from zero.
std::vector<int64_t> quantize(std::span<const double> values, double step);
std::vector<double> dequantize(std::span<const int64_t> q, double step);

struct EncoderConfig {
  Backend backend = Backend::ragft;
  BlockSchedule schedule;     // ignored for raht; single entry for blockgft
  double step = 1.0;          // quantization step, shared by Y, U, V
  SpectralConfig spectral;
};

struct StreamHeader {
  uint8_t version = 1;
  Backend backend = Backend::ragft;
  uint8_t depth = 0;
  std::vector<int> block_sizes;  // root-first
  double threshold = 0.0;
  double step = 1.0;
  uint32_t point_count = 0;
  uint32_t payload_bytes[3] = {0, 0, 0};  // Y, U, V
};

// Self-describing bitstream: fixed little-endian header followed by the
// three RLGR payloads. Field layout in docs/bitstream.md.
std::vector<uint8_t> encode(const VoxelizedCloud& cloud,
                            const EncoderConfig& cfg);

StreamHeader parse_header(std::span<const uint8_t> stream);

// Decodes YUV attributes for the given geometry (coordinates + weights,
// transmitted out-of-band). The geometry must match the encoded cloud.
std::vector<Vec3d> decode(std::span<const uint8_t> stream,
                          const VoxelizedCloud& geometry);

}  // namespace ragft
