#pragma once

#include <cstdint>
#include <vector>

#include "ragft/types.hpp"

namespace ragft {

// Block edge lengths b_1..b_L from the coarsest level down to the leaves.
// Each entry is a power of two; the product must divide 2^J. A product
// equal to 2^J runs the hierarchy to a single root; a smaller product
// stops early, leaving multiple subtree roots at level 0.
struct BlockSchedule {
  std::vector<int> sizes;

  int levels() const { return static_cast<int>(sizes.size()); }
};

// Expands CLI shorthand "b_L,b_{L-1},..." into a full root-first schedule,
// padding omitted coarse levels with 2.
BlockSchedule schedule_from_leaf_sizes(const std::vector<int>& leaf_first,
                                       int depth);

// Nested partition of a Morton-sorted voxelized cloud. Level L holds the
// leaves (one node per point); level 0 holds the subtree roots. Children
// of node i at level l are the contiguous run
// [child_begin[i], child_begin[i+1]) into level l+1.
struct PartitionTree {
  struct Level {
    std::vector<Vec3i> coords;
    std::vector<uint32_t> child_begin;   // size M_l + 1; empty at the leaf level
    std::vector<double> node_weight;     // sum of descendant point weights
    std::vector<uint64_t> desc_count;    // number of descendant points
  };

  int depth = 0;
  std::vector<int> block_sizes;  // b_1..b_L
  std::vector<Level> levels;     // levels[0..L]

  int num_levels() const { return static_cast<int>(block_sizes.size()); }
  std::size_t leaf_count() const { return levels.back().coords.size(); }
  std::size_t root_count() const { return levels.front().coords.size(); }
};

PartitionTree build_tree(const VoxelizedCloud& cloud,
                         const BlockSchedule& schedule);

// One transform block: parent node at `level`, children at level+1.
struct BlockRef {
  uint32_t parent;
  uint32_t first;   // index of first child at level+1
  uint32_t count;
};

// Blocks of a level in Morton order of parent coordinates.
std::vector<BlockRef> level_blocks(const PartitionTree& tree, int level);

}  // namespace ragft
