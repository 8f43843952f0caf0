#pragma once

// Independent reference constructions used by oracle tests: the dense
// composed-transform matrix and an eigensolver-based separable reference.
// These deliberately avoid the streaming code paths they are used to check.

#include <map>
#include <stdexcept>
#include <vector>

#include "ragft/morton.hpp"
#include "ragft/spectral.hpp"
#include "ragft/transforms.hpp"

namespace ragft::testing {

// First-leaf index of every node, per level.
inline std::vector<std::vector<int>> first_leaf(const PartitionTree& tree) {
  const int L = tree.num_levels();
  std::vector<std::vector<int>> first(L + 1);
  first[L].resize(tree.leaf_count());
  for (std::size_t i = 0; i < tree.leaf_count(); i++)
    first[L][i] = static_cast<int>(i);
  for (int l = L - 1; l >= 0; l--) {
    const auto& lv = tree.levels[l];
    first[l].resize(lv.coords.size());
    for (std::size_t i = 0; i < lv.coords.size(); i++)
      first[l][i] = first[l + 1][lv.child_begin[i]];
  }
  return first;
}

// Dense composition: assembles each level operator as a block diagonal of
// the per-block bases scattered through the DC-collecting permutation,
// then multiplies the levels out explicitly.
inline Eigen::MatrixXd dense_transform(const PartitionTree& tree,
                                       const SpectralConfig& cfg = {}) {
  const int n = static_cast<int>(tree.leaf_count());
  auto first = first_leaf(tree);
  Eigen::MatrixXd full = Eigen::MatrixXd::Identity(n, n);
  for (int l = tree.num_levels() - 1; l >= 0; l--) {
    const auto& child_lv = tree.levels[l + 1];
    Eigen::MatrixXd op = Eigen::MatrixXd::Identity(n, n);
    for (const auto& blk : level_blocks(tree, l)) {
      BlockGraph g = build_block_graph(
          std::span(child_lv.coords.data() + blk.first, blk.count),
          std::span(child_lv.node_weight.data() + blk.first, blk.count),
          cfg.threshold);
      BlockTransform t = block_transform(g);
      for (uint32_t r = 0; r < blk.count; r++) {
        int pr = first[l + 1][blk.first + r];
        op(pr, pr) = 0.0;
        for (uint32_t c = 0; c < blk.count; c++)
          op(pr, first[l + 1][blk.first + c]) = t.basis(r, c);
      }
    }
    full = op * full;
  }
  return full;
}

// Dense-layout position of each canonical coefficient.
inline std::vector<int> dense_positions(const PartitionTree& tree,
                                        const CoefficientSet& cs) {
  auto first = first_leaf(tree);
  std::vector<int> pos;
  pos.reserve(cs.size());
  for (const auto& m : cs.meta) {
    if (m.is_dc) {
      pos.push_back(first[0][m.block]);
    } else {
      const auto& lv = tree.levels[m.level];
      pos.push_back(first[m.level + 1][lv.child_begin[m.block] + m.index]);
    }
  }
  return pos;
}

// Separable reference transform: pairs nodes through an explicit bucket
// map and runs every pair through the eigensolver-based block transform
// instead of the closed-form butterfly.
inline CoefficientSet separable_reference(const VoxelizedCloud& cloud) {
  struct Node {
    Vec3i c;
    double w;
    Vec3d vals;
  };
  std::vector<Node> cur(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); i++)
    cur[i] = {cloud.coords[i], cloud.weights[i], cloud.attributes[i]};

  std::vector<std::array<std::vector<double>, 3>> step_acs;
  for (int d = cloud.depth; d >= 1; d--) {
    for (int axis = 0; axis < 3; axis++) {
      std::map<uint64_t, std::vector<std::size_t>> buckets;
      for (std::size_t i = 0; i < cur.size(); i++) {
        Vec3i m = cur[i].c;
        m[axis] >>= 1;
        buckets[morton_code(m)].push_back(i);
      }
      std::array<std::vector<double>, 3> acs;
      std::vector<Node> next;
      for (auto& [key, members] : buckets) {
        if (members.size() > 2)
          throw std::runtime_error("oracle: more than two nodes in a pair bucket");
        if (members.size() == 2 &&
            (cur[members[0]].c[axis] & 1) > (cur[members[1]].c[axis] & 1))
          std::swap(members[0], members[1]);
        Vec3i m = cur[members[0]].c;
        m[axis] >>= 1;
        if (members.size() == 1) {
          next.push_back({m, cur[members[0]].w, cur[members[0]].vals});
          continue;
        }
        std::vector<Vec3i> coords = {cur[members[0]].c, cur[members[1]].c};
        std::vector<double> q = {cur[members[0]].w, cur[members[1]].w};
        BlockGraph g = build_block_graph(coords, q, std::sqrt(3.0));
        BlockTransform t = block_transform(g);
        Node merged{m, q[0] + q[1], {}};
        for (int c = 0; c < 3; c++) {
          Eigen::VectorXd x(2);
          x << cur[members[0]].vals[c], cur[members[1]].vals[c];
          Eigen::VectorXd y = apply_block(t, x);
          merged.vals[c] = y(0);
          acs[c].push_back(y(1));
        }
        next.push_back(merged);
      }
      step_acs.push_back(std::move(acs));
      cur = std::move(next);
    }
  }
  if (cur.size() != 1)
    throw std::runtime_error("oracle: separable reduction did not reach a root");
  CoefficientSet cs;
  for (int c = 0; c < 3; c++) cs.channels[c].push_back(cur[0].vals[c]);
  for (std::size_t s = step_acs.size(); s-- > 0;)
    for (int c = 0; c < 3; c++)
      cs.channels[c].insert(cs.channels[c].end(), step_acs[s][c].begin(),
                            step_acs[s][c].end());
  return cs;
}

}  // namespace ragft::testing
