// Command line front end: encode/decode point cloud colors, run
// rate-distortion sweeps and complexity reports.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ragft/codec.hpp"
#include "ragft/color.hpp"
#include "ragft/metrics.hpp"
#include "ragft/ply.hpp"
#include "ragft/voxel.hpp"

namespace {

using namespace ragft;

Backend parse_backend(const std::string& name) {
  if (name == "ragft") return Backend::ragft;
  if (name == "raht") return Backend::raht;
  if (name == "blockgft") return Backend::blockgft;
  throw CLI::ValidationError("--backend", "expected ragft, raht or blockgft");
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stod(item));
  return out;
}

VoxelizedCloud load_voxelized(const std::string& path, int depth) {
  RawCloud raw = read_ply(path);
  raw.colors = rgb_to_yuv(raw.colors);
  return voxelize(raw, depth);
}

EncoderConfig make_config(Backend backend, const std::string& blocks, int depth,
                          double step, double threshold) {
  EncoderConfig cfg;
  cfg.backend = backend;
  cfg.step = step;
  cfg.spectral.threshold = threshold;
  std::vector<int> leaf_first = blocks.empty() ? std::vector<int>{}
                                               : parse_int_list(blocks);
  if (backend == Backend::blockgft) {
    if (leaf_first.size() != 1)
      throw CLI::ValidationError("--blocks", "blockgft takes a single block size");
    cfg.schedule = BlockSchedule{{leaf_first[0]}};
  } else if (backend == Backend::ragft) {
    cfg.schedule = schedule_from_leaf_sizes(leaf_first, depth);
  }
  return cfg;
}

void write_bytes(const std::string& path, const std::vector<uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

std::vector<uint8_t> read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

RawCloud to_raw(const VoxelizedCloud& cloud, const std::vector<Vec3d>& yuv) {
  RawCloud out;
  out.positions.reserve(cloud.size());
  out.colors.reserve(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); i++) {
    out.positions.push_back({static_cast<double>(cloud.coords[i][0]),
                             static_cast<double>(cloud.coords[i][1]),
                             static_cast<double>(cloud.coords[i][2])});
    out.colors.push_back(clamp_color(yuv_to_rgb(yuv[i])));
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"RA-GFT point cloud color codec"};
  app.require_subcommand(1);

  std::string input, output, geometry, backend_name = "ragft", blocks, out_csv;
  std::vector<std::string> inputs;
  int depth = 10;
  double step = 1.0;
  double threshold = std::sqrt(3.0);
  std::string steps_csv = "64,32,16,8,4";
  std::string format = "binary";

  auto* enc = app.add_subcommand("encode", "Compress colors to a bitstream");
  enc->add_option("--input", input, "Input PLY")->required();
  enc->add_option("--out", output, "Output bitstream")->required();
  enc->add_option("--depth", depth, "Voxelization depth J");
  enc->add_option("--backend", backend_name, "ragft | raht | blockgft");
  enc->add_option("--blocks", blocks,
                  "Leaf-first block sizes, e.g. 16 or 8,4; omitted levels are 2");
  enc->add_option("--step", step, "Quantization step");
  enc->add_option("--threshold", threshold, "Graph edge threshold (child grid units)");

  auto* dec = app.add_subcommand("decode", "Decode a bitstream to a PLY");
  dec->add_option("--input", input, "Input bitstream")->required();
  dec->add_option("--geometry", geometry, "PLY providing the point coordinates")
      ->required();
  dec->add_option("--out", output, "Output PLY")->required();

  auto* swp = app.add_subcommand("sweep", "Rate-distortion sweep, CSV output");
  swp->add_option("--input", inputs, "Input PLY frame(s)")->required();
  swp->add_option("--depth", depth, "Voxelization depth J");
  swp->add_option("--backend", backend_name, "ragft | raht | blockgft");
  swp->add_option("--blocks", blocks, "Leaf-first block sizes");
  swp->add_option("--steps", steps_csv, "Comma-separated quantization steps");
  swp->add_option("--threshold", threshold, "Graph edge threshold");
  swp->add_option("--out", out_csv, "CSV path (default: stdout)");

  auto* cpx = app.add_subcommand("complexity", "Transform cost proxy report");
  cpx->add_option("--input", inputs, "Input PLY frame(s)")->required();
  cpx->add_option("--depth", depth, "Voxelization depth J");
  cpx->add_option("--backend", backend_name, "ragft | blockgft");
  cpx->add_option("--blocks", blocks, "Leaf-first block sizes");

  auto* vox = app.add_subcommand("voxelize", "Quantize positions to the grid");
  vox->add_option("--input", input, "Input PLY")->required();
  vox->add_option("--out", output, "Output PLY")->required();
  vox->add_option("--depth", depth, "Voxelization depth J");
  vox->add_option("--format", format, "ascii | binary");

  CLI11_PARSE(app, argc, argv);

  if (enc->parsed()) {
    Backend backend = parse_backend(backend_name);
    VoxelizedCloud cloud = load_voxelized(input, depth);
    EncoderConfig cfg = make_config(backend, blocks, depth, step, threshold);
    auto stream = encode(cloud, cfg);
    write_bytes(output, stream);
    double bpv = rate_bpv({stream.size()}, {cloud.size()});
    std::cout << "points=" << cloud.size() << " bytes=" << stream.size()
              << " bpv=" << bpv << "\n";
    if (backend != Backend::raht) {
      PartitionTree tree = build_tree(cloud, cfg.schedule);
      BridgeStats bs = count_bridged_blocks(tree, cfg.spectral);
      std::cout << "bridged_blocks=" << bs.bridged << "/" << bs.total << "\n";
    }
    return 0;
  }

  if (dec->parsed()) {
    auto stream = read_bytes(input);
    StreamHeader h = parse_header(stream);
    RawCloud geo = read_ply(geometry);
    VoxelizedCloud cloud = voxelize(geo, h.depth);
    auto yuv = decode(stream, cloud);
    write_ply(to_raw(cloud, yuv), output);
    std::cout << "points=" << cloud.size() << "\n";
    return 0;
  }

  if (swp->parsed()) {
    Backend backend = parse_backend(backend_name);
    std::vector<double> steps = parse_double_list(steps_csv);
    std::vector<VoxelizedCloud> frames;
    for (const auto& path : inputs) frames.push_back(load_voxelized(path, depth));

    std::ostringstream csv;
    csv << "backend,schedule,step,bpv,psnr_y,frames,points\n";
    for (double s : steps) {
      EncoderConfig cfg = make_config(backend, blocks, depth, s, threshold);
      std::vector<std::size_t> bytes, counts;
      std::vector<std::vector<double>> orig_y, dec_y;
      for (const auto& frame : frames) {
        auto stream = encode(frame, cfg);
        auto yuv = decode(stream, frame);
        bytes.push_back(stream.size());
        counts.push_back(frame.size());
        std::vector<double> oy(frame.size()), dy(frame.size());
        for (std::size_t i = 0; i < frame.size(); i++) {
          oy[i] = frame.attributes[i][0];
          dy[i] = yuv[i][0];
        }
        orig_y.push_back(std::move(oy));
        dec_y.push_back(std::move(dy));
      }
      double psnr = psnr_y(orig_y, dec_y);
      std::size_t total_points = 0;
      for (auto c : counts) total_points += c;
      csv << backend_name << "," << (blocks.empty() ? "2" : blocks) << "," << s
          << "," << rate_bpv(bytes, counts) << ",";
      if (std::isinf(psnr))
        csv << "lossless";
      else
        csv << psnr;
      csv << "," << frames.size() << "," << total_points << "\n";
    }
    if (out_csv.empty()) {
      std::cout << csv.str();
    } else {
      std::ofstream out(out_csv);
      if (!out) throw std::runtime_error("cannot open " + out_csv);
      out << csv.str();
      std::cout << "wrote " << out_csv << "\n";
    }
    return 0;
  }

  if (cpx->parsed()) {
    Backend backend = parse_backend(backend_name);
    std::vector<ComplexityReport> reports;
    std::vector<std::size_t> counts;
    for (const auto& path : inputs) {
      VoxelizedCloud cloud = load_voxelized(path, depth);
      EncoderConfig cfg = make_config(backend, blocks, depth, 1.0, threshold);
      if (backend == Backend::raht)
        throw std::runtime_error("complexity: use backend ragft or blockgft");
      PartitionTree tree = build_tree(cloud, cfg.schedule);
      ComplexityReport r = complexity_proxy(tree);
      std::cout << path << ": K=" << r.total << " N=" << cloud.size() << "\n";
      for (std::size_t l = 0; l < r.per_level.size(); l++)
        std::cout << "  level " << l << ": " << r.per_level[l] << "\n";
      reports.push_back(std::move(r));
      counts.push_back(cloud.size());
    }
    std::cout << "aggregate C=" << complexity_aggregate(reports, counts) << "\n";
    return 0;
  }

  if (vox->parsed()) {
    RawCloud raw = read_ply(input);
    VoxelizedCloud cloud = voxelize(raw, depth);
    RawCloud out;
    for (std::size_t i = 0; i < cloud.size(); i++) {
      out.positions.push_back({static_cast<double>(cloud.coords[i][0]),
                               static_cast<double>(cloud.coords[i][1]),
                               static_cast<double>(cloud.coords[i][2])});
      out.colors.push_back(clamp_color(cloud.attributes[i]));
    }
    write_ply(out, output,
              format == "ascii" ? PlyFormat::ascii : PlyFormat::binary);
    std::cout << "points=" << cloud.size() << "\n";
    return 0;
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
