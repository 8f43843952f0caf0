#pragma once

#include <limits>
#include <vector>

#include "ragft/hierarchy.hpp"
#include "ragft/types.hpp"

namespace ragft {

// Frame-averaged luma PSNR in dB against 8-bit peak. Returns +infinity
// for perfect reconstruction (reported by the CLI as "lossless").
double psnr_y(const std::vector<std::vector<double>>& original_y,
              const std::vector<std::vector<double>>& decoded_y);

// Total coded bits (payload + header) over total point count.
double rate_bpv(const std::vector<std::size_t>& stream_bytes,
                const std::vector<std::size_t>& point_counts);

// Cubic eigendecomposition cost proxy: sum over internal nodes of
// (children count)^3, with a per-level breakdown.
struct ComplexityReport {
  double total = 0.0;                 // K for one cloud
  std::vector<double> per_level;      // levels 0..L-1
};

ComplexityReport complexity_proxy(const PartitionTree& tree);

// Aggregate C = sum K_t / sum N_t over a collection of clouds.
double complexity_aggregate(const std::vector<ComplexityReport>& reports,
                            const std::vector<std::size_t>& point_counts);

}  // namespace ragft
