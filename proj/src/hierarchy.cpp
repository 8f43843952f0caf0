#include "ragft/hierarchy.hpp"

#include <bit>
#include <stdexcept>

#include "ragft/morton.hpp"

namespace ragft {
namespace {

bool is_pow2(int v) { return v > 0 && (v & (v - 1)) == 0; }

void validate_schedule(const BlockSchedule& schedule, int depth) {
  if (schedule.sizes.empty())
    throw std::runtime_error("hierarchy: schedule must have at least one level");
  long long log_prod = 0;
  for (int b : schedule.sizes) {
    if (!is_pow2(b) || b < 2)
      throw std::runtime_error("hierarchy: block sizes must be powers of 2, >= 2");
    log_prod += std::countr_zero(static_cast<unsigned>(b));
  }
  if (log_prod > depth)
    throw std::runtime_error("hierarchy: schedule product exceeds 2^J");
}

}  // namespace

BlockSchedule schedule_from_leaf_sizes(const std::vector<int>& leaf_first,
                                       int depth) {
  BlockSchedule s;
  int log_prod = 0;
  for (int b : leaf_first) {
    if (!is_pow2(b) || b < 2)
      throw std::runtime_error("hierarchy: block sizes must be powers of 2, >= 2");
    log_prod += std::countr_zero(static_cast<unsigned>(b));
  }
  if (log_prod > depth)
    throw std::runtime_error("hierarchy: schedule product exceeds 2^J");
  s.sizes.assign(depth - log_prod, 2);
  s.sizes.insert(s.sizes.end(), leaf_first.rbegin(), leaf_first.rend());
  return s;
}

PartitionTree build_tree(const VoxelizedCloud& cloud,
                         const BlockSchedule& schedule) {
  validate_schedule(schedule, cloud.depth);
  const int L = schedule.levels();
  const std::size_t n = cloud.size();

  PartitionTree tree;
  tree.depth = cloud.depth;
  tree.block_sizes = schedule.sizes;
  tree.levels.resize(L + 1);

  auto& leaves = tree.levels[L];
  leaves.coords = cloud.coords;
  leaves.node_weight = cloud.weights;
  leaves.desc_count.assign(n, 1);
  for (std::size_t i = 1; i < n; i++)
    if (morton_code(cloud.coords[i - 1]) >= morton_code(cloud.coords[i]))
      throw std::runtime_error("hierarchy: cloud must be Morton-sorted and unique");

  for (int l = L - 1; l >= 0; l--) {
    const auto& child = tree.levels[l + 1];
    auto& cur = tree.levels[l];
    const int shift = std::countr_zero(static_cast<unsigned>(schedule.sizes[l]));
    const std::size_t m = child.coords.size();
    cur.child_begin.push_back(0);
    std::size_t i = 0;
    while (i < m) {
      Vec3i parent = {child.coords[i][0] >> shift, child.coords[i][1] >> shift,
                      child.coords[i][2] >> shift};
      double w = 0.0;
      uint64_t cnt = 0;
      std::size_t j = i;
      while (j < m) {
        Vec3i p = {child.coords[j][0] >> shift, child.coords[j][1] >> shift,
                   child.coords[j][2] >> shift};
        if (p != parent) break;
        w += child.node_weight[j];
        cnt += child.desc_count[j];
        j++;
      }
      cur.coords.push_back(parent);
      cur.node_weight.push_back(w);
      cur.desc_count.push_back(cnt);
      cur.child_begin.push_back(static_cast<uint32_t>(j));
      i = j;
    }
  }
  return tree;
}

std::vector<BlockRef> level_blocks(const PartitionTree& tree, int level) {
  if (level < 0 || level >= tree.num_levels())
    throw std::runtime_error("hierarchy: level out of range");
  const auto& lv = tree.levels[level];
  std::vector<BlockRef> blocks;
  blocks.reserve(lv.coords.size());
  for (std::size_t i = 0; i < lv.coords.size(); i++)
    blocks.push_back({static_cast<uint32_t>(i), lv.child_begin[i],
                      lv.child_begin[i + 1] - lv.child_begin[i]});
  return blocks;
}

}  // namespace ragft
