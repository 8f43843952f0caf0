#include "ragft/codec.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <stdexcept>

#include "ragft/rlgr.hpp"

namespace ragft {
namespace {

constexpr char kMagic[4] = {'R', 'G', 'F', 'T'};
constexpr uint8_t kVersion = 1;

void append_u32(std::vector<uint8_t>& out, uint32_t v) {
  for (int i = 0; i < 4; i++) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void append_f64(std::vector<uint8_t>& out, double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, 8);
  for (int i = 0; i < 8; i++) out.push_back(static_cast<uint8_t>(bits >> (8 * i)));
}

uint32_t read_u32(std::span<const uint8_t> s, std::size_t& pos) {
  if (pos + 4 > s.size()) throw std::runtime_error("codec: truncated header");
  uint32_t v = 0;
  for (int i = 0; i < 4; i++) v |= static_cast<uint32_t>(s[pos++]) << (8 * i);
  return v;
}

double read_f64(std::span<const uint8_t> s, std::size_t& pos) {
  if (pos + 8 > s.size()) throw std::runtime_error("codec: truncated header");
  uint64_t bits = 0;
  for (int i = 0; i < 8; i++) bits |= static_cast<uint64_t>(s[pos++]) << (8 * i);
  double v;
  std::memcpy(&v, &bits, 8);
  return v;
}

CoefficientSet forward(const VoxelizedCloud& cloud, const EncoderConfig& cfg) {
  switch (cfg.backend) {
    case Backend::raht:
      return raht_forward(cloud);
    case Backend::blockgft: {
      if (cfg.schedule.sizes.size() != 1)
        throw std::runtime_error("codec: blockgft needs a single block size");
      return blockgft_forward(cloud, cfg.schedule.sizes[0], cfg.spectral);
    }
    case Backend::ragft: {
      PartitionTree tree = build_tree(cloud, cfg.schedule);
      return ragft_forward(cloud, tree, cfg.spectral);
    }
  }
  throw std::runtime_error("codec: unknown backend");
}

}  // namespace

std::vector<int64_t> quantize(std::span<const double> values, double step) {
  if (step <= 0.0) throw std::runtime_error("codec: quantization step must be positive");
  std::vector<int64_t> q(values.size());
  for (std::size_t i = 0; i < values.size(); i++)
    q[i] = std::llround(values[i] / step);  // half away from zero
  return q;
}

std::vector<double> dequantize(std::span<const int64_t> q, double step) {
  std::vector<double> v(q.size());
  for (std::size_t i = 0; i < q.size(); i++)
    v[i] = step * static_cast<double>(q[i]);
  return v;
}

std::vector<uint8_t> encode(const VoxelizedCloud& cloud,
                            const EncoderConfig& cfg) {
  if (cloud.size() == 0) throw std::runtime_error("codec: empty cloud");
  CoefficientSet coeffs = forward(cloud, cfg);

  std::vector<std::vector<uint8_t>> payloads(3);
  for (int c = 0; c < 3; c++) {
    auto q = quantize(coeffs.channels[c], cfg.step);
    payloads[c] = rlgr_encode(q);
  }

  std::vector<uint8_t> out;
  out.insert(out.end(), kMagic, kMagic + 4);
  out.push_back(kVersion);
  out.push_back(static_cast<uint8_t>(cfg.backend));
  out.push_back(static_cast<uint8_t>(cloud.depth));
  const auto& sizes =
      cfg.backend == Backend::raht ? std::vector<int>{} : cfg.schedule.sizes;
  out.push_back(static_cast<uint8_t>(sizes.size()));
  for (int b : sizes)
    out.push_back(static_cast<uint8_t>(std::countr_zero(static_cast<unsigned>(b))));
  append_f64(out, cfg.spectral.threshold);
  append_f64(out, cfg.step);
  append_u32(out, static_cast<uint32_t>(cloud.size()));
  for (int c = 0; c < 3; c++)
    append_u32(out, static_cast<uint32_t>(payloads[c].size()));
  for (int c = 0; c < 3; c++)
    out.insert(out.end(), payloads[c].begin(), payloads[c].end());
  return out;
}

StreamHeader parse_header(std::span<const uint8_t> stream) {
  if (stream.size() < 8 || std::memcmp(stream.data(), kMagic, 4) != 0)
    throw std::runtime_error("codec: bad magic");
  std::size_t pos = 4;
  StreamHeader h;
  h.version = stream[pos++];
  if (h.version != kVersion)
    throw std::runtime_error("codec: unsupported stream version");
  uint8_t backend = stream[pos++];
  if (backend > 2) throw std::runtime_error("codec: unknown backend tag");
  h.backend = static_cast<Backend>(backend);
  h.depth = stream[pos++];
  uint8_t levels = stream[pos++];
  if (pos + levels > stream.size())
    throw std::runtime_error("codec: truncated header");
  for (int i = 0; i < levels; i++) h.block_sizes.push_back(1 << stream[pos++]);
  h.threshold = read_f64(stream, pos);
  h.step = read_f64(stream, pos);
  h.point_count = read_u32(stream, pos);
  for (int c = 0; c < 3; c++) h.payload_bytes[c] = read_u32(stream, pos);
  std::size_t total = pos;
  for (int c = 0; c < 3; c++) total += h.payload_bytes[c];
  if (total != stream.size())
    throw std::runtime_error("codec: payload length mismatch");
  return h;
}

std::vector<Vec3d> decode(std::span<const uint8_t> stream,
                          const VoxelizedCloud& geometry) {
  StreamHeader h = parse_header(stream);
  if (geometry.size() != h.point_count)
    throw std::runtime_error("codec: geometry point count mismatch");
  if (geometry.depth != h.depth)
    throw std::runtime_error("codec: geometry depth mismatch");

  std::size_t pos = 4 + 1 + 1 + 1 + 1 + h.block_sizes.size() + 8 + 8 + 4 + 12;
  CoefficientSet coeffs;
  for (int c = 0; c < 3; c++) {
    auto payload = stream.subspan(pos, h.payload_bytes[c]);
    pos += h.payload_bytes[c];
    auto q = rlgr_decode(payload, h.point_count);
    coeffs.channels[c] = dequantize(q, h.step);
  }

  SpectralConfig spectral{h.threshold};
  switch (h.backend) {
    case Backend::raht:
      return raht_inverse(coeffs, geometry);
    case Backend::blockgft:
      if (h.block_sizes.size() != 1)
        throw std::runtime_error("codec: blockgft needs a single block size");
      return blockgft_inverse(coeffs, geometry, h.block_sizes[0], spectral);
    case Backend::ragft: {
      PartitionTree tree = build_tree(geometry, BlockSchedule{h.block_sizes});
      return ragft_inverse(coeffs, tree, spectral);
    }
  }
  throw std::runtime_error("codec: unknown backend");
}

}  // namespace ragft
