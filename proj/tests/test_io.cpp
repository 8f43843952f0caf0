#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "ragft/color.hpp"
#include "ragft/morton.hpp"
#include "ragft/ply.hpp"
#include "ragft/voxel.hpp"

using namespace ragft;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace

TEST_CASE("read_ply parses a single ascii vertex") {
  auto path = temp_path("ragft_io_single.ply");
  write_text(path,
             "ply\nformat ascii 1.0\nelement vertex 1\n"
             "property float x\nproperty float y\nproperty float z\n"
             "property uchar red\nproperty uchar green\nproperty uchar blue\n"
             "end_header\n0 0 0 255 0 0\n");
  RawCloud c = read_ply(path);
  REQUIRE(c.size() == 1);
  CHECK(c.positions[0] == Vec3d{0, 0, 0});
  CHECK(c.colors[0] == Vec3d{255, 0, 0});
}

TEST_CASE("read_ply rejects a cloud without color properties") {
  auto path = temp_path("ragft_io_nocolor.ply");
  write_text(path,
             "ply\nformat ascii 1.0\nelement vertex 1\n"
             "property float x\nproperty float y\nproperty float z\n"
             "end_header\n0 0 0\n");
  CHECK_THROWS_WITH_AS(read_ply(path), doctest::Contains("red"),
                       std::runtime_error);
}

TEST_CASE("read_ply rejects big-endian files") {
  auto path = temp_path("ragft_io_be.ply");
  write_text(path,
             "ply\nformat binary_big_endian 1.0\nelement vertex 0\n"
             "property float x\nproperty float y\nproperty float z\n"
             "property uchar red\nproperty uchar green\nproperty uchar blue\n"
             "end_header\n");
  CHECK_THROWS_AS(read_ply(path), std::runtime_error);
}

TEST_CASE("read_ply reports truncated vertex data") {
  auto path = temp_path("ragft_io_trunc.ply");
  write_text(path,
             "ply\nformat ascii 1.0\nelement vertex 3\n"
             "property float x\nproperty float y\nproperty float z\n"
             "property uchar red\nproperty uchar green\nproperty uchar blue\n"
             "end_header\n0 0 0 1 2 3\n");
  CHECK_THROWS_AS(read_ply(path), std::runtime_error);
}

TEST_CASE("write_ply round-trips in both formats") {
  RawCloud c;
  c.positions = {{1, 2, 3}, {4.5, 5.25, 6}, {0, 1023, 17}};
  c.colors = {{255, 0, 0}, {10, 20, 30}, {0, 0, 255}};

  for (auto fmt : {PlyFormat::ascii, PlyFormat::binary}) {
    auto path = temp_path("ragft_io_rt.ply");
    write_ply(c, path, fmt);
    RawCloud back = read_ply(path);
    REQUIRE(back.size() == c.size());
    for (std::size_t i = 0; i < c.size(); i++) {
      for (int k = 0; k < 3; k++) {
        CHECK(back.positions[i][k] == doctest::Approx(c.positions[i][k]));
        CHECK(back.colors[i][k] == c.colors[i][k]);
      }
    }
  }
}

TEST_CASE("write_ply rejects empty clouds") {
  CHECK_THROWS_AS(write_ply(RawCloud{}, temp_path("ragft_io_empty.ply")),
                  std::runtime_error);
}

TEST_CASE("voxelize is the identity on pre-voxelized data") {
  RawCloud c;
  c.positions = {{5, 9, 100}, {0, 0, 0}, {1023, 1023, 1023}};
  c.colors = {{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
  VoxelizedCloud v = voxelize(c, 10);
  REQUIRE(v.size() == 3);
  CHECK(v.coords[0] == Vec3i{0, 0, 0});
  CHECK(v.coords[1] == Vec3i{5, 9, 100});
  CHECK(v.coords[2] == Vec3i{1023, 1023, 1023});
  for (double w : v.weights) CHECK(w == 1.0);
}

TEST_CASE("voxelize merges duplicate voxels by averaging") {
  RawCloud c;
  c.positions = {{3, 3, 3}, {3, 3, 3}};
  c.colors = {{0, 0, 0}, {2, 2, 2}};
  VoxelizedCloud v = voxelize(c, 4);
  REQUIRE(v.size() == 1);
  CHECK(v.attributes[0] == Vec3d{1, 1, 1});
  CHECK(v.weights[0] == 2.0);
}

TEST_CASE("voxelize output is Morton-sorted (brute-force oracle)") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> pos(0.0, 1.999);
  RawCloud c;
  for (int i = 0; i < 8; i++) {
    c.positions.push_back({pos(rng), pos(rng), pos(rng)});
    c.colors.push_back({0, 0, 0});
  }
  VoxelizedCloud v = voxelize(c, 1);
  for (const auto& coord : v.coords)
    for (int k = 0; k < 3; k++) CHECK((coord[k] == 0 || coord[k] == 1));

  // Oracle: Morton order on {0,1}^3 with x least significant is the
  // integer order of z*4 + y*2 + x.
  for (std::size_t i = 1; i < v.size(); i++) {
    auto key = [](const Vec3i& c) { return c[2] * 4 + c[1] * 2 + c[0]; };
    CHECK(key(v.coords[i - 1]) < key(v.coords[i]));
  }
}

TEST_CASE("voxelize is idempotent") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> pos(-50.0, 310.0);
  std::uniform_real_distribution<double> col(0.0, 255.0);
  RawCloud c;
  for (int i = 0; i < 300; i++) {
    c.positions.push_back({pos(rng), pos(rng), pos(rng)});
    c.colors.push_back({col(rng), col(rng), col(rng)});
  }
  VoxelizedCloud v1 = voxelize(c, 6);

  RawCloud asraw;
  for (std::size_t i = 0; i < v1.size(); i++) {
    asraw.positions.push_back({static_cast<double>(v1.coords[i][0]),
                               static_cast<double>(v1.coords[i][1]),
                               static_cast<double>(v1.coords[i][2])});
    asraw.colors.push_back(v1.attributes[i]);
  }
  VoxelizedCloud v2 = voxelize(asraw, 6);
  REQUIRE(v2.size() == v1.size());
  for (std::size_t i = 0; i < v1.size(); i++) {
    CHECK(v2.coords[i] == v1.coords[i]);
    for (int k = 0; k < 3; k++)
      CHECK(v2.attributes[i][k] == doctest::Approx(v1.attributes[i][k]));
  }
}

TEST_CASE("voxelized coordinates are unique") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> pos(0.0, 3.999);
  RawCloud c;
  for (int i = 0; i < 500; i++) {
    c.positions.push_back({pos(rng), pos(rng), pos(rng)});
    c.colors.push_back({0, 0, 0});
  }
  VoxelizedCloud v = voxelize(c, 2);
  for (std::size_t i = 1; i < v.size(); i++)
    CHECK(morton_code(v.coords[i - 1]) < morton_code(v.coords[i]));
}

TEST_CASE("color conversion endpoints") {
  Vec3d black = rgb_to_yuv({0, 0, 0});
  CHECK(black[0] == doctest::Approx(0.0));
  CHECK(black[1] == doctest::Approx(128.0));
  CHECK(black[2] == doctest::Approx(128.0));

  Vec3d white = rgb_to_yuv({255, 255, 255});
  CHECK(white[0] == doctest::Approx(255.0));
  CHECK(white[1] == doctest::Approx(128.0));
  CHECK(white[2] == doctest::Approx(128.0));
}

TEST_CASE("color round-trip is within one code value per channel") {
  std::mt19937 rng(17);
  std::uniform_int_distribution<int> ch(0, 255);
  for (int i = 0; i < 1000; i++) {
    Vec3d rgb = {static_cast<double>(ch(rng)), static_cast<double>(ch(rng)),
                 static_cast<double>(ch(rng))};
    Vec3d back = clamp_color(yuv_to_rgb(rgb_to_yuv(rgb)));
    for (int k = 0; k < 3; k++) CHECK(std::abs(back[k] - rgb[k]) <= 1.0);
  }
}

TEST_CASE("constant RGB maps to constant YUV") {
  Vec3d a = rgb_to_yuv({42, 42, 42});
  CHECK(a[0] == doctest::Approx(42.0));
  CHECK(a[1] == doctest::Approx(128.0));
  CHECK(a[2] == doctest::Approx(128.0));
}
