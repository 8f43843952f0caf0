#include "ragft/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ragft/morton.hpp"

namespace ragft {
namespace {

struct LevelCoeffs {
  std::array<std::vector<double>, 3> vals;
  std::vector<CoeffMeta> meta;
};

}  // namespace

CoefficientSet ragft_forward(const VoxelizedCloud& cloud,
                             const PartitionTree& tree,
                             const SpectralConfig& cfg) {
  const int L = tree.num_levels();
  const std::size_t n = cloud.size();
  if (tree.leaf_count() != n)
    throw std::runtime_error("transforms: tree does not match cloud");

  std::array<std::vector<double>, 3> dc;
  for (int c = 0; c < 3; c++) {
    dc[c].resize(n);
    for (std::size_t i = 0; i < n; i++) dc[c][i] = cloud.attributes[i][c];
  }

  std::vector<LevelCoeffs> acs(L);
  for (int l = L - 1; l >= 0; l--) {
    const auto& child_lv = tree.levels[l + 1];
    const std::size_t m = tree.levels[l].coords.size();
    std::array<std::vector<double>, 3> next;
    for (int c = 0; c < 3; c++) next[c].resize(m);
    auto& out = acs[l];
    for (const auto& blk : level_blocks(tree, l)) {
      BlockGraph g = build_block_graph(
          std::span(child_lv.coords.data() + blk.first, blk.count),
          std::span(child_lv.node_weight.data() + blk.first, blk.count),
          cfg.threshold);
      BlockTransform t = block_transform(g);
      // One basis per block, reused across channels.
      for (int c = 0; c < 3; c++) {
        Eigen::VectorXd x(blk.count);
        for (uint32_t j = 0; j < blk.count; j++) x(j) = dc[c][blk.first + j];
        Eigen::VectorXd y = apply_block(t, x);
        next[c][blk.parent] = y(0);
        for (uint32_t j = 1; j < blk.count; j++) out.vals[c].push_back(y(j));
      }
      for (uint32_t j = 1; j < blk.count; j++)
        out.meta.push_back({l, blk.parent, j,
                            child_lv.node_weight[blk.first + j], false});
    }
    dc = std::move(next);
  }

  CoefficientSet cs;
  const auto& roots = tree.levels[0];
  for (std::size_t i = 0; i < roots.coords.size(); i++) {
    for (int c = 0; c < 3; c++) cs.channels[c].push_back(dc[c][i]);
    cs.meta.push_back({-1, static_cast<uint32_t>(i), 0, roots.node_weight[i], true});
  }
  for (int l = 0; l < L; l++) {
    for (int c = 0; c < 3; c++)
      cs.channels[c].insert(cs.channels[c].end(), acs[l].vals[c].begin(),
                            acs[l].vals[c].end());
    cs.meta.insert(cs.meta.end(), acs[l].meta.begin(), acs[l].meta.end());
  }
  return cs;
}

std::vector<Vec3d> ragft_inverse(const CoefficientSet& coeffs,
                                 const PartitionTree& tree,
                                 const SpectralConfig& cfg) {
  const int L = tree.num_levels();
  const std::size_t n = tree.leaf_count();
  if (coeffs.size() != n)
    throw std::runtime_error("transforms: coefficient count mismatch");

  std::size_t pos = 0;
  std::array<std::vector<double>, 3> dc;
  const std::size_t roots = tree.root_count();
  for (int c = 0; c < 3; c++) dc[c].resize(roots);
  for (std::size_t i = 0; i < roots; i++, pos++)
    for (int c = 0; c < 3; c++) dc[c][i] = coeffs.channels[c][pos];

  for (int l = 0; l < L; l++) {
    const auto& child_lv = tree.levels[l + 1];
    std::array<std::vector<double>, 3> next;
    for (int c = 0; c < 3; c++) next[c].resize(child_lv.coords.size());
    for (const auto& blk : level_blocks(tree, l)) {
      BlockGraph g = build_block_graph(
          std::span(child_lv.coords.data() + blk.first, blk.count),
          std::span(child_lv.node_weight.data() + blk.first, blk.count),
          cfg.threshold);
      BlockTransform t = block_transform(g);
      for (int c = 0; c < 3; c++) {
        Eigen::VectorXd y(blk.count);
        y(0) = dc[c][blk.parent];
        for (uint32_t j = 1; j < blk.count; j++)
          y(j) = coeffs.channels[c][pos + j - 1];
        Eigen::VectorXd x = t.basis.transpose() * y;
        for (uint32_t j = 0; j < blk.count; j++) next[c][blk.first + j] = x(j);
      }
      pos += blk.count - 1;
    }
    dc = std::move(next);
  }
  if (pos != n) throw std::runtime_error("transforms: coefficient layout mismatch");

  std::vector<Vec3d> attrs(n);
  for (std::size_t i = 0; i < n; i++)
    attrs[i] = {dc[0][i], dc[1][i], dc[2][i]};
  return attrs;
}

// ---------------------------------------------------------------------------
// Separable RAHT

namespace {

struct RahtGroup {
  uint32_t start;  // into the permuted finer order
  uint32_t count;  // 1 or 2
  double w1, w2;
};

struct RahtSubstep {
  std::vector<uint32_t> perm;
  std::vector<RahtGroup> groups;
};

// Pairing structure from geometry alone, leaves first. Substep 3k+axis
// halves `axis` (x, then y, then z) of dyadic level depth-k.
std::vector<RahtSubstep> build_raht_plan(const VoxelizedCloud& geometry) {
  struct Node {
    Vec3i c;
    double w;
  };
  std::vector<Node> cur(geometry.size());
  for (std::size_t i = 0; i < geometry.size(); i++)
    cur[i] = {geometry.coords[i], geometry.weights[i]};

  std::vector<RahtSubstep> steps;
  for (int d = geometry.depth; d >= 1; d--) {
    for (int axis = 0; axis < 3; axis++) {
      RahtSubstep st;
      st.perm.resize(cur.size());
      std::iota(st.perm.begin(), st.perm.end(), 0u);
      auto merged = [&](uint32_t i) {
        Vec3i m = cur[i].c;
        m[axis] >>= 1;
        return m;
      };
      std::sort(st.perm.begin(), st.perm.end(), [&](uint32_t a, uint32_t b) {
        uint64_t ka = morton_code(merged(a)), kb = morton_code(merged(b));
        if (ka != kb) return ka < kb;
        return (cur[a].c[axis] & 1) < (cur[b].c[axis] & 1);
      });
      std::vector<Node> next;
      for (std::size_t i = 0; i < st.perm.size();) {
        Vec3i m = merged(st.perm[i]);
        if (i + 1 < st.perm.size() && merged(st.perm[i + 1]) == m) {
          double w1 = cur[st.perm[i]].w, w2 = cur[st.perm[i + 1]].w;
          st.groups.push_back({static_cast<uint32_t>(i), 2, w1, w2});
          next.push_back({m, w1 + w2});
          i += 2;
        } else {
          st.groups.push_back({static_cast<uint32_t>(i), 1, cur[st.perm[i]].w, 0.0});
          next.push_back({m, cur[st.perm[i]].w});
          i += 1;
        }
      }
      steps.push_back(std::move(st));
      cur = std::move(next);
    }
  }
  return steps;
}

// Butterfly rows after the sign canon of the spectral module: the AC row
// [-b, a] is flipped when b >= a, i.e. when w2 >= w1.
inline void butterfly(double w1, double w2, double x1, double x2, double& dc,
                      double& ac) {
  const double s = std::sqrt(w1 + w2);
  const double a = std::sqrt(w1) / s, b = std::sqrt(w2) / s;
  dc = a * x1 + b * x2;
  ac = (w1 > w2) ? (-b * x1 + a * x2) : (b * x1 - a * x2);
}

inline void butterfly_inverse(double w1, double w2, double dc, double ac,
                              double& x1, double& x2) {
  const double s = std::sqrt(w1 + w2);
  const double a = std::sqrt(w1) / s, b = std::sqrt(w2) / s;
  if (w1 > w2) {
    x1 = a * dc - b * ac;
    x2 = b * dc + a * ac;
  } else {
    x1 = a * dc + b * ac;
    x2 = b * dc - a * ac;
  }
}

}  // namespace

CoefficientSet raht_forward(const VoxelizedCloud& cloud) {
  auto steps = build_raht_plan(cloud);
  const std::size_t n = cloud.size();

  std::array<std::vector<double>, 3> dc;
  for (int c = 0; c < 3; c++) {
    dc[c].resize(n);
    for (std::size_t i = 0; i < n; i++) dc[c][i] = cloud.attributes[i][c];
  }

  std::vector<LevelCoeffs> acs(steps.size());
  for (std::size_t s = 0; s < steps.size(); s++) {
    const auto& st = steps[s];
    std::array<std::vector<double>, 3> next;
    for (int c = 0; c < 3; c++) next[c].resize(st.groups.size());
    for (std::size_t gi = 0; gi < st.groups.size(); gi++) {
      const auto& grp = st.groups[gi];
      if (grp.count == 2) {
        for (int c = 0; c < 3; c++) {
          double d, a;
          butterfly(grp.w1, grp.w2, dc[c][st.perm[grp.start]],
                    dc[c][st.perm[grp.start + 1]], d, a);
          next[c][gi] = d;
          acs[s].vals[c].push_back(a);
        }
        acs[s].meta.push_back({static_cast<int32_t>(steps.size() - 1 - s),
                               static_cast<uint32_t>(gi), 1, grp.w2, false});
      } else {
        for (int c = 0; c < 3; c++) next[c][gi] = dc[c][st.perm[grp.start]];
      }
    }
    dc = std::move(next);
  }

  CoefficientSet cs;
  for (int c = 0; c < 3; c++) cs.channels[c].push_back(dc[c][0]);
  double total_w = std::accumulate(cloud.weights.begin(), cloud.weights.end(), 0.0);
  cs.meta.push_back({-1, 0, 0, total_w, true});
  for (std::size_t s = steps.size(); s-- > 0;) {
    for (int c = 0; c < 3; c++)
      cs.channels[c].insert(cs.channels[c].end(), acs[s].vals[c].begin(),
                            acs[s].vals[c].end());
    cs.meta.insert(cs.meta.end(), acs[s].meta.begin(), acs[s].meta.end());
  }
  return cs;
}

std::vector<Vec3d> raht_inverse(const CoefficientSet& coeffs,
                                const VoxelizedCloud& geometry) {
  auto steps = build_raht_plan(geometry);
  const std::size_t n = geometry.size();
  if (coeffs.size() != n)
    throw std::runtime_error("transforms: coefficient count mismatch");

  std::size_t pos = 0;
  std::array<std::vector<double>, 3> dc;
  for (int c = 0; c < 3; c++) dc[c].assign(1, coeffs.channels[c][pos]);
  pos++;

  for (std::size_t s = steps.size(); s-- > 0;) {
    const auto& st = steps[s];
    std::array<std::vector<double>, 3> fine;
    for (int c = 0; c < 3; c++) fine[c].resize(st.perm.size());
    for (std::size_t gi = 0; gi < st.groups.size(); gi++) {
      const auto& grp = st.groups[gi];
      if (grp.count == 2) {
        for (int c = 0; c < 3; c++) {
          double x1, x2;
          butterfly_inverse(grp.w1, grp.w2, dc[c][gi], coeffs.channels[c][pos],
                            x1, x2);
          fine[c][st.perm[grp.start]] = x1;
          fine[c][st.perm[grp.start + 1]] = x2;
        }
        pos++;
      } else {
        for (int c = 0; c < 3; c++) fine[c][st.perm[grp.start]] = dc[c][gi];
      }
    }
    dc = std::move(fine);
  }
  if (pos != n) throw std::runtime_error("transforms: coefficient layout mismatch");

  std::vector<Vec3d> attrs(n);
  for (std::size_t i = 0; i < n; i++)
    attrs[i] = {dc[0][i], dc[1][i], dc[2][i]};
  return attrs;
}

// ---------------------------------------------------------------------------
// Single-level block-GFT

CoefficientSet blockgft_forward(const VoxelizedCloud& cloud, int block_size,
                                const SpectralConfig& cfg) {
  PartitionTree tree = build_tree(cloud, BlockSchedule{{block_size}});
  return ragft_forward(cloud, tree, cfg);
}

BridgeStats count_bridged_blocks(const PartitionTree& tree,
                                 const SpectralConfig& cfg) {
  BridgeStats stats;
  for (int l = 0; l < tree.num_levels(); l++) {
    const auto& child_lv = tree.levels[l + 1];
    for (const auto& blk : level_blocks(tree, l)) {
      BlockGraph g = build_block_graph(
          std::span(child_lv.coords.data() + blk.first, blk.count),
          std::span(child_lv.node_weight.data() + blk.first, blk.count),
          cfg.threshold);
      stats.total++;
      if (g.bridged) stats.bridged++;
    }
  }
  return stats;
}

std::vector<Vec3d> blockgft_inverse(const CoefficientSet& coeffs,
                                    const VoxelizedCloud& geometry,
                                    int block_size, const SpectralConfig& cfg) {
  PartitionTree tree = build_tree(geometry, BlockSchedule{{block_size}});
  return ragft_inverse(coeffs, tree, cfg);
}

}  // namespace ragft
