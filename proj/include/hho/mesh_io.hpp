#pragma once

#include <filesystem>
#include <iosfwd>

#include "hho/mesh.hpp"

namespace hho {

// Native text format:
//
//   polymesh 2d
//   vertices V
//   x y            (V lines)
//   cells C
//   m i1 ... im    (C lines, counterclockwise, 0-based vertex ids)
//
// Blank lines and lines starting with '#' are ignored. Faces are derived on
// read, never stored. Coordinates are written with 17 significant digits.
enum class MeshFormat { native };

void write_mesh(const PolyMesh& mesh, std::ostream& out, MeshFormat format = MeshFormat::native);
void write_mesh(const PolyMesh& mesh, const std::filesystem::path& path, MeshFormat format = MeshFormat::native);

/// Throws ParseError (with line number) on malformed input and MeshError on invalid topology.
PolyMesh read_mesh(std::istream& in, MeshFormat format = MeshFormat::native);
PolyMesh read_mesh(const std::filesystem::path& path, MeshFormat format = MeshFormat::native);

} // namespace hho
