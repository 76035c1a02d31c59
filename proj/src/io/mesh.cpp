#include "cnet/io/mesh.hpp"

#include "cnet/errors.hpp"
#include "cnet/io/document.hpp"

#include <cstdio>
#include <sstream>

namespace cnet::io {

TessellationGrid tessellate(const Surface& s, int nu, int nv)
{
    if (nu < 2 || nv < 2)
        throw InvalidArgument("tessellate: grid must be at least 2x2, got " + std::to_string(nu) + "x" +
                              std::to_string(nv));
    if (s.dimension() != 3) throw InvalidArgument("tessellate: surface is not 3-D");
    TessellationGrid g;
    g.nu = nu;
    g.nv = nv;
    g.vertices.resize(static_cast<Eigen::Index>(nu) * nv, 3);
    const auto [u0, u1] = s.domain_u();
    const auto [v0, v1] = s.domain_v();
    for (int j = 0; j < nv; ++j)
        for (int i = 0; i < nu; ++i) {
            // exact ends so the border rows sit on the boundary curves
            const double u = (i == nu - 1) ? u1 : u0 + (u1 - u0) * i / (nu - 1);
            const double v = (j == nv - 1) ? v1 : v0 + (v1 - v0) * j / (nv - 1);
            g.params.push_back({u, v});
            g.vertices.row(static_cast<Eigen::Index>(j) * nu + i) = s.evaluate(u, v);
        }
    for (int j = 0; j + 1 < nv; ++j)
        for (int i = 0; i + 1 < nu; ++i) {
            const int a = j * nu + i, b = j * nu + i + 1, c = (j + 1) * nu + i + 1, d = (j + 1) * nu + i;
            g.triangles.push_back({a, b, c});
            g.triangles.push_back({a, c, d});
        }
    return g;
}

namespace {

double tidy(double x) { return x == 0.0 ? 0.0 : x; }

void put3(std::ostream& out, const char* prefix, double x, double y, double z)
{
    char buf[128];
    std::snprintf(buf, sizeof buf, "%s %.8e %.8e %.8e\n", prefix, tidy(x), tidy(y), tidy(z));
    out << buf;
}

void write_stl(const TessellationGrid& g, std::ostream& out)
{
    out << "solid cnet\n";
    for (const auto& t : g.triangles) {
        const Eigen::RowVector3d a = g.vertices.row(t[0]), b = g.vertices.row(t[1]), c = g.vertices.row(t[2]);
        Eigen::RowVector3d n = (b - a).cross(c - a);
        const double len = n.norm();
        n = len > 0 ? Eigen::RowVector3d(n / len) : Eigen::RowVector3d::Zero();
        put3(out, "  facet normal", n[0], n[1], n[2]);
        out << "    outer loop\n";
        for (const auto* p : {&a, &b, &c}) put3(out, "      vertex", (*p)[0], (*p)[1], (*p)[2]);
        out << "    endloop\n  endfacet\n";
    }
    out << "endsolid cnet\n";
}

void write_obj(const TessellationGrid& g, std::ostream& out)
{
    for (Eigen::Index i = 0; i < g.vertices.rows(); ++i)
        put3(out, "v", g.vertices(i, 0), g.vertices(i, 1), g.vertices(i, 2));
    for (const auto& t : g.triangles) out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

} // namespace

void export_mesh(const TessellationGrid& grid, MeshFormat format, std::ostream& out)
{
    if (grid.vertices.rows() == 0 || grid.triangles.empty()) throw InvalidArgument("export_mesh: empty grid");
    if (format == MeshFormat::StlAscii) write_stl(grid, out);
    else write_obj(grid, out);
    if (!out) throw IoError("export_mesh: write failed");
}

std::string mesh_to_string(const TessellationGrid& grid, MeshFormat format)
{
    std::ostringstream out;
    export_mesh(grid, format, out);
    return out.str();
}

void write_mesh_file(const TessellationGrid& grid, MeshFormat format, const std::string& path)
{
    write_text_file(path, mesh_to_string(grid, format));
}

} // namespace cnet::io
