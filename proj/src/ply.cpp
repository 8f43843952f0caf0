#include "ragft/ply.hpp"

#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

namespace ragft {
namespace {

struct Property {
  std::string name;
  std::string type;
};

std::size_t scalar_size(const std::string& type) {
  static const std::map<std::string, std::size_t> sizes = {
      {"char", 1},  {"int8", 1},    {"uchar", 1},  {"uint8", 1},
      {"short", 2}, {"int16", 2},   {"ushort", 2}, {"uint16", 2},
      {"int", 4},   {"int32", 4},   {"uint", 4},   {"uint32", 4},
      {"float", 4}, {"float32", 4}, {"double", 8}, {"float64", 8}};
  auto it = sizes.find(type);
  if (it == sizes.end())
    throw std::runtime_error("ply: unsupported property type '" + type + "'");
  return it->second;
}

double parse_binary_scalar(const char* p, const std::string& type) {
  auto load = [&]<typename T>(T) {
    T v;
    std::memcpy(&v, p, sizeof(T));
    return static_cast<double>(v);
  };
  if (type == "char" || type == "int8") return load(int8_t{});
  if (type == "uchar" || type == "uint8") return load(uint8_t{});
  if (type == "short" || type == "int16") return load(int16_t{});
  if (type == "ushort" || type == "uint16") return load(uint16_t{});
  if (type == "int" || type == "int32") return load(int32_t{});
  if (type == "uint" || type == "uint32") return load(uint32_t{});
  if (type == "float" || type == "float32") return load(float{});
  return load(double{});
}

}  // namespace

RawCloud read_ply(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("ply: cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("ply: empty file");
  if (line == "ply\r") line = "ply";
  if (line != "ply") throw std::runtime_error("ply: missing magic line");

  bool binary = false;
  bool format_seen = false;
  std::size_t vertex_count = 0;
  bool in_vertex_element = false;
  bool vertex_seen = false;
  std::vector<Property> props;

  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (tok == "comment" || tok == "obj_info" || tok.empty()) continue;
    if (tok == "format") {
      std::string fmt;
      ls >> fmt;
      if (fmt == "ascii")
        binary = false;
      else if (fmt == "binary_little_endian")
        binary = true;
      else
        throw std::runtime_error("ply: unsupported format '" + fmt + "'");
      format_seen = true;
    } else if (tok == "element") {
      std::string name;
      std::size_t count;
      ls >> name >> count;
      in_vertex_element = (name == "vertex");
      if (in_vertex_element) {
        vertex_count = count;
        vertex_seen = true;
      } else if (vertex_seen && count > 0) {
        throw std::runtime_error("ply: trailing element '" + name +
                                 "' not supported");
      }
    } else if (tok == "property") {
      if (!in_vertex_element) continue;
      Property p;
      ls >> p.type;
      if (p.type == "list")
        throw std::runtime_error("ply: list properties not supported");
      ls >> p.name;
      props.push_back(p);
    } else if (tok == "end_header") {
      break;
    } else {
      throw std::runtime_error("ply: unexpected header token '" + tok + "'");
    }
  }
  if (!format_seen) throw std::runtime_error("ply: missing format line");
  if (!vertex_seen) throw std::runtime_error("ply: missing vertex element");

  int idx[6] = {-1, -1, -1, -1, -1, -1};
  const char* wanted[6] = {"x", "y", "z", "red", "green", "blue"};
  for (std::size_t i = 0; i < props.size(); i++)
    for (int k = 0; k < 6; k++)
      if (props[i].name == wanted[k]) idx[k] = static_cast<int>(i);
  for (int k = 0; k < 3; k++)
    if (idx[k] < 0)
      throw std::runtime_error(std::string("ply: missing coordinate property ") +
                               wanted[k]);
  for (int k = 3; k < 6; k++)
    if (idx[k] < 0)
      throw std::runtime_error(std::string("ply: missing color property ") +
                               wanted[k]);

  RawCloud cloud;
  cloud.positions.resize(vertex_count);
  cloud.colors.resize(vertex_count);

  if (binary) {
    std::size_t stride = 0;
    std::vector<std::size_t> offsets(props.size());
    for (std::size_t i = 0; i < props.size(); i++) {
      offsets[i] = stride;
      stride += scalar_size(props[i].type);
    }
    std::vector<char> row(stride);
    for (std::size_t i = 0; i < vertex_count; i++) {
      in.read(row.data(), static_cast<std::streamsize>(stride));
      if (!in) throw std::runtime_error("ply: vertex data truncated");
      for (int k = 0; k < 3; k++)
        cloud.positions[i][k] =
            parse_binary_scalar(row.data() + offsets[idx[k]], props[idx[k]].type);
      for (int k = 0; k < 3; k++)
        cloud.colors[i][k] = parse_binary_scalar(row.data() + offsets[idx[3 + k]],
                                                 props[idx[3 + k]].type);
    }
  } else {
    std::vector<double> row(props.size());
    for (std::size_t i = 0; i < vertex_count; i++) {
      for (std::size_t j = 0; j < props.size(); j++)
        if (!(in >> row[j]))
          throw std::runtime_error("ply: vertex data truncated");
      for (int k = 0; k < 3; k++) cloud.positions[i][k] = row[idx[k]];
      for (int k = 0; k < 3; k++) cloud.colors[i][k] = row[idx[3 + k]];
    }
  }
  return cloud;
}

void write_ply(const RawCloud& cloud, const std::string& path, PlyFormat format) {
  if (cloud.size() == 0) throw std::runtime_error("ply: refusing to write empty cloud");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("ply: cannot open " + path + " for writing");

  out << "ply\n";
  out << (format == PlyFormat::ascii ? "format ascii 1.0\n"
                                     : "format binary_little_endian 1.0\n");
  out << "element vertex " << cloud.size() << "\n";
  out << "property float x\nproperty float y\nproperty float z\n";
  out << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  out << "end_header\n";

  if (format == PlyFormat::ascii) {
    for (std::size_t i = 0; i < cloud.size(); i++) {
      out << static_cast<float>(cloud.positions[i][0]) << " "
          << static_cast<float>(cloud.positions[i][1]) << " "
          << static_cast<float>(cloud.positions[i][2]) << " "
          << static_cast<int>(cloud.colors[i][0]) << " "
          << static_cast<int>(cloud.colors[i][1]) << " "
          << static_cast<int>(cloud.colors[i][2]) << "\n";
    }
  } else {
    for (std::size_t i = 0; i < cloud.size(); i++) {
      float xyz[3];
      uint8_t rgb[3];
      for (int k = 0; k < 3; k++) {
        xyz[k] = static_cast<float>(cloud.positions[i][k]);
        rgb[k] = static_cast<uint8_t>(cloud.colors[i][k]);
      }
      out.write(reinterpret_cast<const char*>(xyz), sizeof(xyz));
      out.write(reinterpret_cast<const char*>(rgb), sizeof(rgb));
    }
  }
  if (!out) throw std::runtime_error("ply: write failed for " + path);
}

}  // namespace ragft
