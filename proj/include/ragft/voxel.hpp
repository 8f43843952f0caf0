#pragma once

#include "ragft/types.hpp"

namespace ragft {

// Maps positions onto the {0..2^depth-1}^3 grid, merges points that land in
// the same voxel (attribute = weighted mean, weight = sum) and returns the
// result Morton-sorted. Positions already inside the grid pass through
// unchanged (apart from the floor); out-of-range clouds are shifted and
// scaled to fit. Attribute triples are carried as-is.
VoxelizedCloud voxelize(const RawCloud& cloud, int depth);

// Same, with explicit per-input-point weights.
VoxelizedCloud voxelize(const RawCloud& cloud, int depth,
                        const std::vector<double>& weights);

}  // namespace ragft
