#pragma once

#include <string>

#include "ragft/types.hpp"

namespace ragft {

enum class PlyFormat { ascii, binary };

// Reads a PLY vertex cloud with x,y,z and red,green,blue properties.
// Accepts ascii and binary_little_endian; other vertex properties are
// skipped. Throws std::runtime_error on malformed input.
RawCloud read_ply(const std::string& path);

// Writes positions as float32 and colors as uchar. Throws on empty clouds
// and unwritable paths.
void write_ply(const RawCloud& cloud, const std::string& path,
               PlyFormat format = PlyFormat::binary);

}  // namespace ragft
