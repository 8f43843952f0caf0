#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "ragft/types.hpp"

namespace ragft {

// Full-range BT.601. Chroma channels are offset by 128 so that neutral
// colors map to (Y, 128, 128).
inline Vec3d rgb_to_yuv(const Vec3d& rgb) {
  const double r = rgb[0], g = rgb[1], b = rgb[2];
  return {0.299 * r + 0.587 * g + 0.114 * b,
          -0.168736 * r - 0.331264 * g + 0.5 * b + 128.0,
          0.5 * r - 0.418688 * g - 0.081312 * b + 128.0};
}

inline Vec3d yuv_to_rgb(const Vec3d& yuv) {
  const double y = yuv[0], u = yuv[1] - 128.0, v = yuv[2] - 128.0;
  return {y + 1.402 * v, y - 0.344136 * u - 0.714136 * v, y + 1.772 * u};
}

// Round and clamp a real-valued color triple to 8-bit range.
inline Vec3d clamp_color(const Vec3d& c) {
  Vec3d out;
  for (int k = 0; k < 3; k++)
    out[k] = std::clamp(std::round(c[k]), 0.0, 255.0);
  return out;
}

inline std::vector<Vec3d> rgb_to_yuv(const std::vector<Vec3d>& colors) {
  std::vector<Vec3d> out(colors.size());
  for (std::size_t i = 0; i < colors.size(); i++) out[i] = rgb_to_yuv(colors[i]);
  return out;
}

inline std::vector<Vec3d> yuv_to_rgb(const std::vector<Vec3d>& colors) {
  std::vector<Vec3d> out(colors.size());
  for (std::size_t i = 0; i < colors.size(); i++) out[i] = yuv_to_rgb(colors[i]);
  return out;
}

}  // namespace ragft
