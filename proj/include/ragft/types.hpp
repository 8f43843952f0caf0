#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace ragft {

using Vec3i = std::array<int32_t, 3>;
using Vec3d = std::array<double, 3>;

// Point cloud as read from disk: real-valued positions, 8-bit RGB colors.
struct RawCloud {
  std::vector<Vec3d> positions;
  std::vector<Vec3d> colors;

  std::size_t size() const { return positions.size(); }
};

// Point cloud on the integer grid {0..2^depth-1}^3 with unique coordinates,
// Morton-sorted. Attributes are YUV triples; weights default to 1 per point.
struct VoxelizedCloud {
  int depth = 0;
  std::vector<Vec3i> coords;
  std::vector<Vec3d> attributes;
  std::vector<double> weights;

  std::size_t size() const { return coords.size(); }
};

}  // namespace ragft
