#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cnet/errors.hpp"
#include "cnet/gordon.hpp"
#include "cnet/io/document.hpp"
#include "cnet/io/mesh.hpp"

#include "oracles.hpp"

#include <cstdio>
#include <filesystem>
#include <sstream>

using namespace cnet;

namespace {

std::string data(const std::string& name) { return std::string(CNET_DATA_DIR) + "/" + name; }

template <typename Fn>
std::string error_of(Fn&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

std::string line_with(const std::string& text, const std::string& needle)
{
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line))
        if (line.find(needle) != std::string::npos) return line;
    return {};
}

Surface flat_unit_square()
{
    PointMatrix<double> net(2, 6);
    net << 0, 0, 0, 0, 1, 0,
           1, 0, 0, 1, 1, 0;
    return Surface(1, 1, KnotVector<double>({0, 0, 1, 1}), KnotVector<double>({0, 0, 1, 1}), net, 3);
}

} // namespace

TEST_CASE("square document parses into four linear curves")
{
    const auto doc = io::read_network_file(data("square.json"));
    REQUIRE(doc.profiles.size() == 2);
    REQUIRE(doc.guides.size() == 2);
    CHECK(doc.profiles[0].name == std::optional<std::string>("bottom"));
    CHECK(doc.config == io::ConfigOverrides{});
    const auto net = io::realize(doc);
    CHECK(net.profiles[1].degree() == 1);
    CHECK((net.guides[1].evaluate(0.5) - Point3(1, 0.5, 0)).norm() <= 1e-15);
}

TEST_CASE("config overrides replace only the fields that are present")
{
    const auto doc = io::parse_network(R"({"profiles": [], "config": {"approx_tol": 1e-5, "refine": false}})");
    const auto cfg = doc.config.apply();
    CHECK(cfg.approx_tol == 1e-5);
    CHECK_FALSE(cfg.refine);
    CHECK(cfg.intersection_tol == GordonConfig{}.intersection_tol);
    CHECK(cfg.max_refinements == GordonConfig{}.max_refinements);
}

TEST_CASE("knot count mismatch names the curve")
{
    const std::string text = R"({"profiles": [
        {"type": "bspline", "name": "bad", "degree": 2, "knots": [0, 0, 1, 1],
         "control_points": [[0, 0, 0], [1, 0, 0], [2, 0, 0]]}]})";
    const auto msg = error_of([&] { io::parse_network(text); });
    CHECK(msg.find("profiles[0]") != std::string::npos);
    CHECK(msg.find("'bad'") != std::string::npos);
    CHECK_THROWS_AS(io::parse_network(text), ValidationError);
}

TEST_CASE("schema errors carry a json path")
{
    const auto unknown = error_of([] {
        io::parse_network(R"({"profiles": [{"type": "points", "points": [[0,0,0],[1,0,0]], "colour": 1}]})");
    });
    CHECK(unknown.find("$.profiles[0].colour") != std::string::npos);

    const auto wrong_type = error_of([] {
        io::parse_network(R"({"profiles": [{"type": "points", "points": [[0,0,0],[1,"x",0]]}]})");
    });
    CHECK(wrong_type.find("$.profiles[0].points[1][1]") != std::string::npos);

    CHECK(error_of([] { io::parse_network(R"({"guides": []})"); }).find("profiles") != std::string::npos);
    CHECK(error_of([] { io::parse_network(R"({"profiles": [{"type": "spline"}]})"); }).find("$.profiles[0].type") !=
          std::string::npos);
    CHECK_THROWS_AS(io::parse_network("{\"profiles\": ["), ParseError);
    CHECK_THROWS_AS(io::parse_network(R"({"profiles": [], "extra": 1})"), ParseError);
}

TEST_CASE("duplicate curve names are rejected")
{
    const std::string text = R"({"profiles": [
        {"type": "points", "name": "a", "points": [[0,0,0],[1,0,0],[2,0,1],[3,0,0]]},
        {"type": "points", "name": "a", "points": [[0,1,0],[1,1,0],[2,1,1],[3,1,0]]}]})";
    CHECK_THROWS_AS(io::parse_network(text), ValidationError);
}

TEST_CASE("wing document survives a serialize and parse round trip")
{
    const auto doc = io::read_network_file(data("wing.json"));
    CHECK(doc.profiles.size() == 4);
    CHECK(doc.guides.size() == 3);
    CHECK(std::holds_alternative<io::CstSpec>(doc.profiles[0].shape));
    CHECK(std::holds_alternative<io::CompositeSpec>(doc.guides[1].shape));
    const auto text = io::serialize_network(doc);
    const auto again = io::parse_network(text);
    CHECK(again == doc);
    CHECK(io::serialize_network(again) == text);
}

TEST_CASE("surface json round trip is exact")
{
    oracle::Gen g(71);
    for (int trial = 0; trial < 10; ++trial) {
        const int du = g.integer(1, 3), dv = g.integer(1, 3);
        const int nu = du + 1 + g.integer(0, 4), nv = dv + 1 + g.integer(0, 4);
        const auto ku = g.knots(du, nu, 2), kv = g.knots(dv, nv, 2);
        const Surface s(du, dv, ku, kv, g.points(nu, 3 * nv, 3.0), 3);
        const auto back = io::parse_surface(io::serialize_surface(s));
        CHECK(back.degree_u() == du);
        CHECK(back.degree_v() == dv);
        CHECK(back.knots_u() == s.knots_u());
        CHECK(back.knots_v() == s.knots_v());
        CHECK(back.net() == s.net());
    }
    CHECK_THROWS_AS(io::parse_surface(R"({"type": "bspline_surface"})"), ParseError);
}

TEST_CASE("tessellation of the unit square")
{
    const auto grid = io::tessellate(flat_unit_square(), 2, 2);
    REQUIRE(grid.vertices.rows() == 4);
    REQUIRE(grid.triangles.size() == 2);
    double area = 0;
    for (const auto& t : grid.triangles) {
        const Point3 a = grid.vertices.row(t[0]), b = grid.vertices.row(t[1]), c = grid.vertices.row(t[2]);
        const Point3 n = (b - a).cross(c - a);
        CHECK(n[2] > 0);
        area += 0.5 * n.norm();
    }
    CHECK(area == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(io::tessellate(flat_unit_square(), 1, 5), InvalidArgument);
}

TEST_CASE("tessellated vertices are surface evaluations")
{
    const auto result = build_gordon(io::realize(io::read_network_file(data("wing.json"))));
    const auto grid = io::tessellate(result.surface, 65, 33);
    REQUIRE(grid.vertices.rows() == 65 * 33);
    CHECK(grid.triangles.size() == 2u * 64 * 32);
    for (int j = 0; j < 33; j += 4)
        for (int i = 0; i < 65; i += 4) {
            const auto idx = j * 65 + i;
            const auto [u, v] = grid.params[static_cast<std::size_t>(idx)];
            CHECK(u == doctest::Approx(i / 64.0));
            CHECK(v == doctest::Approx(j / 32.0));
            CHECK((grid.vertices.row(idx) - result.surface.evaluate(u, v)).norm() <= 1e-12);
        }
}

TEST_CASE("stl and obj exports")
{
    const auto grid = io::tessellate(flat_unit_square(), 2, 2);
    const auto stl = io::mesh_to_string(grid, io::MeshFormat::StlAscii);
    CHECK(stl.rfind("solid cnet\n", 0) == 0);
    CHECK(stl.find("endsolid cnet") != std::string::npos);
    std::size_t facets = 0;
    for (auto pos = stl.find("facet normal"); pos != std::string::npos; pos = stl.find("facet normal", pos + 1))
        ++facets;
    CHECK(facets == 2);
    CHECK(line_with(stl, "facet normal").find("0.00000000e+00 0.00000000e+00 1.00000000e+00") != std::string::npos);
    CHECK(stl.find("-0.0") == std::string::npos);
    CHECK(stl == io::mesh_to_string(io::tessellate(flat_unit_square(), 2, 2), io::MeshFormat::StlAscii));

    const auto obj = io::mesh_to_string(io::tessellate(flat_unit_square(), 4, 3), io::MeshFormat::Obj);
    std::size_t v = 0, f = 0;
    std::istringstream in(obj);
    std::string line;
    while (std::getline(in, line)) {
        if (line.rfind("v ", 0) == 0) ++v;
        if (line.rfind("f ", 0) == 0) ++f;
    }
    CHECK(v == 12);
    CHECK(f == 2 * 3 * 2);
    CHECK(line_with(obj, "f ").find(" 0") == std::string::npos);
}

TEST_CASE("file errors are io errors")
{
    const auto grid = io::tessellate(flat_unit_square(), 2, 2);
    CHECK_THROWS_AS(io::write_mesh_file(grid, io::MeshFormat::StlAscii, "/nonexistent-dir/x.stl"), IoError);
    CHECK_THROWS_AS(io::read_network_file("/nonexistent-dir/net.json"), IoError);

    const auto path = (std::filesystem::temp_directory_path() / "cnet_test_io_square.stl").string();
    io::write_mesh_file(grid, io::MeshFormat::StlAscii, path);
    CHECK(io::read_text_file(path) == io::mesh_to_string(grid, io::MeshFormat::StlAscii));
    std::remove(path.c_str());
}
