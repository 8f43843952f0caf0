#include "ragft/voxel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "ragft/morton.hpp"

namespace ragft {

VoxelizedCloud voxelize(const RawCloud& cloud, int depth) {
  return voxelize(cloud, depth, std::vector<double>(cloud.size(), 1.0));
}

VoxelizedCloud voxelize(const RawCloud& cloud, int depth,
                        const std::vector<double>& weights) {
  if (depth < 1 || depth > 21) throw std::runtime_error("voxelize: depth out of range");
  if (weights.size() != cloud.size())
    throw std::runtime_error("voxelize: weight count mismatch");
  const std::size_t n = cloud.size();
  const double grid_max = std::ldexp(1.0, depth) - 1.0;

  Vec3d lo{0, 0, 0}, hi{0, 0, 0};
  for (int k = 0; k < 3; k++) {
    lo[k] = std::numeric_limits<double>::infinity();
    hi[k] = -std::numeric_limits<double>::infinity();
  }
  for (const auto& p : cloud.positions)
    for (int k = 0; k < 3; k++) {
      lo[k] = std::min(lo[k], p[k]);
      hi[k] = std::max(hi[k], p[k]);
    }

  // Identity mapping when the data already sits inside the grid.
  bool in_range = true;
  for (int k = 0; k < 3; k++)
    if (lo[k] < 0.0 || hi[k] > grid_max) in_range = false;

  double scale = 1.0;
  Vec3d shift{0, 0, 0};
  if (!in_range) {
    double extent = 0.0;
    for (int k = 0; k < 3; k++) extent = std::max(extent, hi[k] - lo[k]);
    scale = extent > 0.0 ? grid_max / extent : 1.0;
    shift = lo;
  }

  struct Entry {
    uint64_t key;
    Vec3i coord;
    Vec3d attr;
    double weight;
  };
  std::vector<Entry> entries(n);
  for (std::size_t i = 0; i < n; i++) {
    Vec3i c;
    for (int k = 0; k < 3; k++) {
      double v = (cloud.positions[i][k] - shift[k]) * scale;
      c[k] = static_cast<int32_t>(
          std::clamp(std::floor(v), 0.0, grid_max));
    }
    entries[i] = {morton_code(c), c, cloud.colors[i], weights[i]};
  }
  std::sort(entries.begin(), entries.end(),
            [](const Entry& a, const Entry& b) { return a.key < b.key; });

  VoxelizedCloud out;
  out.depth = depth;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    Vec3d acc{0, 0, 0};
    double wsum = 0.0;
    while (j < n && entries[j].key == entries[i].key) {
      for (int k = 0; k < 3; k++) acc[k] += entries[j].weight * entries[j].attr[k];
      wsum += entries[j].weight;
      j++;
    }
    out.coords.push_back(entries[i].coord);
    out.attributes.push_back({acc[0] / wsum, acc[1] / wsum, acc[2] / wsum});
    out.weights.push_back(wsum);
    i = j;
  }
  return out;
}

}  // namespace ragft
