#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <span>
#include <vector>

#include "ragft/types.hpp"

namespace ragft {

struct SpectralConfig {
  // Edge threshold in units of the child grid spacing. The default
  // connects the 26-neighborhood inside a block.
  double threshold = std::sqrt(3.0);
};

struct BlockEdge {
  int a;
  int b;
  double weight;
};

struct BlockGraph {
  int n = 0;
  std::vector<Vec3i> coords;
  std::vector<BlockEdge> edges;        // each undirected edge stored once, a < b
  std::vector<double> node_weights;    // diagonal of Q
  bool bridged = false;                // true if connectivity augmentation fired
};

// Connects children within `threshold` Euclidean distance, edge weight
// 1/distance. If the thresholded graph is disconnected, nearest components
// are bridged (weight = reciprocal distance) until a single component
// remains; `bridged` records that this happened.
BlockGraph build_block_graph(std::span<const Vec3i> coords,
                             std::span<const double> node_weights,
                             double threshold);

// Q^{-1/2} (D - W) Q^{-1/2}.
Eigen::MatrixXd q_normalized_laplacian(const BlockGraph& g);

// Orthonormal eigenbasis of the Q-normalized Laplacian. Row r of `basis`
// is the eigenvector of the r-th smallest eigenvalue; the coefficient
// vector of a signal x is basis * x with the DC in position 0.
struct BlockTransform {
  Eigen::MatrixXd basis;        // Phi^T
  Eigen::VectorXd eigenvalues;  // ascending, first one 0
};

// Deterministic eigendecomposition: eigenvalues ascending, each
// eigenvector scaled so its largest-magnitude entry (lowest index on
// ties) is positive, near-degenerate eigenvectors ordered
// lexicographically. Eigenvalues in [-1e-12, 0] are clamped to 0.
BlockTransform block_transform(const BlockGraph& g);

Eigen::VectorXd apply_block(const BlockTransform& t,
                            const Eigen::VectorXd& signal);

}  // namespace ragft
