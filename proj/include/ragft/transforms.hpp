#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ragft/hierarchy.hpp"
#include "ragft/spectral.hpp"
#include "ragft/types.hpp"

namespace ragft {

enum class Backend : uint8_t { ragft = 0, raht = 1, blockgft = 2 };

struct CoeffMeta {
  int32_t level;        // transform level the coefficient was produced at
  uint32_t block;       // block (parent node) index within the level
  uint32_t index;       // position within the block, ascending eigenvalue
  double weight;        // node weight of the subband's node
  bool is_dc;
};

// Transform coefficients in canonical serialization order: subtree-root
// DCs first (Morton order), then per level from the root down, blocks in
// Morton order of parent, AC coefficients by ascending eigenvalue index.
// The decoder rebuilds the identical order from geometry alone.
struct CoefficientSet {
  std::array<std::vector<double>, 3> channels;
  std::vector<CoeffMeta> meta;

  std::size_t size() const { return channels[0].size(); }
};

CoefficientSet ragft_forward(const VoxelizedCloud& cloud,
                             const PartitionTree& tree,
                             const SpectralConfig& cfg = {});

std::vector<Vec3d> ragft_inverse(const CoefficientSet& coeffs,
                                 const PartitionTree& tree,
                                 const SpectralConfig& cfg = {});

// Separable region-adaptive Haar: within each dyadic level the two-point
// butterfly runs along x, then y, then z, pairing nodes co-located after
// halving that axis. Weights pass through as sums.
CoefficientSet raht_forward(const VoxelizedCloud& cloud);

std::vector<Vec3d> raht_inverse(const CoefficientSet& coeffs,
                                const VoxelizedCloud& geometry);

// Single-level transform: one spectral block per b x b x b cube of the
// leaf grid, one DC per block, no promotion.
CoefficientSet blockgft_forward(const VoxelizedCloud& cloud, int block_size,
                                const SpectralConfig& cfg = {});

// How many transform blocks needed connectivity bridging, out of the
// total block count. Reported by the CLI so results can be caveated.
struct BridgeStats {
  std::size_t bridged = 0;
  std::size_t total = 0;
};

BridgeStats count_bridged_blocks(const PartitionTree& tree,
                                 const SpectralConfig& cfg = {});

std::vector<Vec3d> blockgft_inverse(const CoefficientSet& coeffs,
                                    const VoxelizedCloud& geometry,
                                    int block_size,
                                    const SpectralConfig& cfg = {});

}  // namespace ragft
