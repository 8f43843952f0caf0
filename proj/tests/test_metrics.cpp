#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "ragft/metrics.hpp"
#include "support/synthetic.hpp"

using namespace ragft;
using ragft::testing::make_voxelized;
using ragft::testing::nine_leaf_cloud;
using ragft::testing::random_cloud;

TEST_CASE("psnr of a perfect reconstruction is infinite") {
  std::vector<std::vector<double>> y = {{10.0, 20.0, 30.0}};
  CHECK(std::isinf(psnr_y(y, y)));
}

TEST_CASE("single point with error 255 gives 0 dB") {
  std::vector<std::vector<double>> orig = {{255.0}};
  std::vector<std::vector<double>> dec = {{0.0}};
  CHECK(psnr_y(orig, dec) == doctest::Approx(0.0));
}

TEST_CASE("two-frame psnr matches a scalar oracle") {
  std::vector<std::vector<double>> orig = {{100.0, 50.0}, {10.0, 20.0, 30.0}};
  std::vector<std::vector<double>> dec = {{90.0, 55.0}, {10.0, 25.0, 27.0}};
  double f1 = (100.0 + 25.0) / (255.0 * 255.0 * 2.0);
  double f2 = (0.0 + 25.0 + 9.0) / (255.0 * 255.0 * 3.0);
  double expect = -10.0 * std::log10((f1 + f2) / 2.0);
  CHECK(psnr_y(orig, dec) == doctest::Approx(expect));
}

TEST_CASE("psnr rejects mismatched shapes") {
  std::vector<std::vector<double>> a = {{1.0}};
  std::vector<std::vector<double>> b = {{1.0, 2.0}};
  CHECK_THROWS_AS(psnr_y(a, b), std::runtime_error);
  CHECK_THROWS_AS(psnr_y({}, {}), std::runtime_error);
}

TEST_CASE("bits per voxel") {
  CHECK(rate_bpv({125}, {1000}) == doctest::Approx(1.0));
  CHECK(rate_bpv({125, 125}, {1000, 1000}) == doctest::Approx(1.0));
  // Mixed sizes against hand summation.
  double expect = 8.0 * (40.0 + 100.0) / (64.0 + 300.0);
  CHECK(rate_bpv({40, 100}, {64, 300}) == doctest::Approx(expect));
}

TEST_CASE("complexity proxy of the nine-leaf tree is 126") {
  auto cloud = nine_leaf_cloud();
  PartitionTree tree = build_tree(cloud, BlockSchedule{{2, 2}});
  ComplexityReport r = complexity_proxy(tree);
  CHECK(r.total == doctest::Approx(126.0));
  REQUIRE(r.per_level.size() == 2);
  CHECK(r.per_level[0] == doctest::Approx(27.0));
  CHECK(r.per_level[1] == doctest::Approx(3.0 * 3 * 3 + 4 * 4 * 4 + 2 * 2 * 2));
}

TEST_CASE("single point costs one unit per level") {
  auto cloud = make_voxelized({{0, 0, 0}}, {{0, 0, 0}}, 4);
  PartitionTree tree = build_tree(cloud, schedule_from_leaf_sizes({}, 4));
  CHECK(complexity_proxy(tree).total == doctest::Approx(4.0));
}

TEST_CASE("full dyadic tree proxy matches a brute-force walk") {
  // All 8^2 = 64 occupied leaves of a depth-2 grid: every block is full.
  std::vector<Vec3i> coords;
  std::vector<Vec3d> attrs;
  for (int x = 0; x < 4; x++)
    for (int y = 0; y < 4; y++)
      for (int z = 0; z < 4; z++) {
        coords.push_back({x, y, z});
        attrs.push_back({0, 0, 0});
      }
  auto cloud = make_voxelized(std::move(coords), std::move(attrs), 2);
  PartitionTree tree = build_tree(cloud, BlockSchedule{{2, 2}});
  ComplexityReport r = complexity_proxy(tree);

  // Brute force over the tree structure.
  double expect = 0.0;
  for (int l = 0; l < tree.num_levels(); l++)
    for (const auto& blk : level_blocks(tree, l))
      expect += std::pow(static_cast<double>(blk.count), 3.0);
  CHECK(r.total == doctest::Approx(expect));
  // 1 root block of 8 children + 8 blocks of 8 children.
  CHECK(r.total == doctest::Approx(512.0 + 8.0 * 512.0));
}

TEST_CASE("proxy is invariant to attribute values") {
  std::mt19937 rng(167);
  auto cloud = random_cloud(rng, 300, 5);
  PartitionTree t1 = build_tree(cloud, schedule_from_leaf_sizes({4}, 5));
  for (auto& a : cloud.attributes) a = {1.0, 2.0, 3.0};
  PartitionTree t2 = build_tree(cloud, schedule_from_leaf_sizes({4}, 5));
  CHECK(complexity_proxy(t1).total == complexity_proxy(t2).total);
}

TEST_CASE("aggregate complexity normalizes by total points") {
  ComplexityReport a;
  a.total = 1000.0;
  ComplexityReport b;
  b.total = 3000.0;
  CHECK(complexity_aggregate({a, b}, {100, 300}) == doctest::Approx(10.0));
}
