#pragma once

#include "cnet/bspline_surface.hpp"

#include <array>
#include <ostream>
#include <string>
#include <vector>

namespace cnet::io {

/// Surface sampled on a uniform nu x nv parameter grid. Vertex (i, j) sits at
/// u = i / (nu - 1), v = j / (nv - 1) and has index j * nu + i.
struct TessellationGrid {
    int nu = 0;
    int nv = 0;
    std::vector<std::array<double, 2>> params;
    PointMatrix<double> vertices;
    std::vector<std::array<int, 3>> triangles;
};

/// Each grid quad is split along its (i, j) -> (i+1, j+1) diagonal.
TessellationGrid tessellate(const Surface& s, int nu, int nv);

enum class MeshFormat { StlAscii, Obj };

void export_mesh(const TessellationGrid& grid, MeshFormat format, std::ostream& out);
std::string mesh_to_string(const TessellationGrid& grid, MeshFormat format);
void write_mesh_file(const TessellationGrid& grid, MeshFormat format, const std::string& path);

} // namespace cnet::io
