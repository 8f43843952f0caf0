#include "ragft/spectral.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace ragft {
namespace {

double dist(const Vec3i& a, const Vec3i& b) {
  double s = 0.0;
  for (int k = 0; k < 3; k++) {
    double d = static_cast<double>(a[k]) - static_cast<double>(b[k]);
    s += d * d;
  }
  return std::sqrt(s);
}

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

BlockGraph build_block_graph(std::span<const Vec3i> coords,
                             std::span<const double> node_weights,
                             double threshold) {
  const int n = static_cast<int>(coords.size());
  if (n < 1) throw std::runtime_error("spectral: empty block");
  if (threshold <= 0.0) throw std::runtime_error("spectral: threshold must be positive");
  if (node_weights.size() != coords.size())
    throw std::runtime_error("spectral: node weight count mismatch");

  BlockGraph g;
  g.n = n;
  g.coords.assign(coords.begin(), coords.end());
  g.node_weights.assign(node_weights.begin(), node_weights.end());
  for (double q : g.node_weights)
    if (q <= 0.0) throw std::runtime_error("spectral: non-positive node weight");

  UnionFind uf(n);
  int components = n;
  // Threshold is inclusive; coordinates are unique so d > 0 always.
  const double thr2 = threshold * threshold + 1e-12;
  for (int a = 0; a < n; a++)
    for (int b = a + 1; b < n; b++) {
      double d = dist(g.coords[a], g.coords[b]);
      if (d * d <= thr2) {
        g.edges.push_back({a, b, 1.0 / d});
        if (uf.unite(a, b)) components--;
      }
    }

  while (components > 1) {
    g.bridged = true;
    double best = std::numeric_limits<double>::infinity();
    int ba = -1, bb = -1;
    for (int a = 0; a < n; a++)
      for (int b = a + 1; b < n; b++) {
        if (uf.find(a) == uf.find(b)) continue;
        double d = dist(g.coords[a], g.coords[b]);
        if (d < best) {
          best = d;
          ba = a;
          bb = b;
        }
      }
    g.edges.push_back({ba, bb, 1.0 / best});
    uf.unite(ba, bb);
    components--;
  }
  return g;
}

Eigen::MatrixXd q_normalized_laplacian(const BlockGraph& g) {
  Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(g.n, g.n);
  for (const auto& e : g.edges) {
    lap(e.a, e.b) -= e.weight;
    lap(e.b, e.a) -= e.weight;
    lap(e.a, e.a) += e.weight;
    lap(e.b, e.b) += e.weight;
  }
  Eigen::VectorXd qinv(g.n);
  for (int i = 0; i < g.n; i++) {
    if (g.node_weights[i] <= 0.0)
      throw std::runtime_error("spectral: non-positive node weight");
    qinv(i) = 1.0 / std::sqrt(g.node_weights[i]);
  }
  return qinv.asDiagonal() * lap * qinv.asDiagonal();
}

BlockTransform block_transform(const BlockGraph& g) {
  BlockTransform t;
  if (g.n == 1) {
    t.basis = Eigen::MatrixXd::Identity(1, 1);
    t.eigenvalues = Eigen::VectorXd::Zero(1);
    return t;
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(q_normalized_laplacian(g));
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("spectral: eigensolver failed to converge");

  Eigen::VectorXd vals = solver.eigenvalues();
  Eigen::MatrixXd vecs = solver.eigenvectors();  // columns, eigenvalues ascending

  for (int i = 0; i < g.n; i++) {
    if (vals(i) >= -1e-12 && vals(i) < 0.0) vals(i) = 0.0;
  }

  // Sign canon: largest-magnitude entry (lowest index on ties) positive.
  for (int c = 0; c < g.n; c++) {
    int arg = 0;
    double best = std::abs(vecs(0, c));
    for (int r = 1; r < g.n; r++)
      if (std::abs(vecs(r, c)) > best) {
        best = std::abs(vecs(r, c));
        arg = r;
      }
    if (vecs(arg, c) < 0.0) vecs.col(c) = -vecs.col(c);
  }

  // Within a near-degenerate eigenvalue group, order columns
  // lexicographically for a reproducible basis.
  int start = 0;
  while (start < g.n) {
    int end = start + 1;
    while (end < g.n && vals(end) - vals(end - 1) <= 1e-9) end++;
    if (end - start > 1) {
      std::vector<int> order(end - start);
      std::iota(order.begin(), order.end(), start);
      std::sort(order.begin(), order.end(), [&](int a, int b) {
        for (int r = 0; r < g.n; r++) {
          if (vecs(r, a) != vecs(r, b)) return vecs(r, a) < vecs(r, b);
        }
        return false;
      });
      Eigen::MatrixXd tmp(g.n, end - start);
      Eigen::VectorXd tmpv(end - start);
      for (int i = 0; i < end - start; i++) {
        tmp.col(i) = vecs.col(order[i]);
        tmpv(i) = vals(order[i]);
      }
      vecs.block(0, start, g.n, end - start) = tmp;
      vals.segment(start, end - start) = tmpv;
    }
    start = end;
  }

  t.basis = vecs.transpose();
  t.eigenvalues = vals;
  return t;
}

Eigen::VectorXd apply_block(const BlockTransform& t, const Eigen::VectorXd& signal) {
  if (signal.size() != t.basis.rows())
    throw std::runtime_error("spectral: signal length mismatch");
  return t.basis * signal;
}

}  // namespace ragft
