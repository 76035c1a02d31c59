#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cnet/errors.hpp"
#include "cnet/gordon.hpp"
#include "cnet/profiles.hpp"
#include "cnet/skinning.hpp"

#include "oracles.hpp"

using namespace cnet;
using oracle::Gen;

namespace {

Curve segment(const Point3& a, const Point3& b)
{
    PointMatrix<double> p(2, 3);
    p.row(0) = a;
    p.row(1) = b;
    return Curve(1, KnotVector<double>({0, 0, 1, 1}), p);
}

Curve translated(const Curve& c, const Point3& d)
{
    PointMatrix<double> p = c.control_points();
    p.rowwise() += d;
    return Curve(c.degree(), c.knots(), p);
}

std::vector<std::vector<PointRow<double>>> grid_of(const std::vector<double>& us, const std::vector<double>& vs,
                                                   auto&& f)
{
    std::vector<std::vector<PointRow<double>>> g;
    for (double u : us) {
        auto& row = g.emplace_back();
        for (double v : vs) row.push_back(f(u, v));
    }
    return g;
}

} // namespace

TEST_CASE("ruled surface from two lines")
{
    const auto a = segment({0, 0, 0}, {1, 0, 0});
    const auto b = segment({0, 1, 2}, {1, 1, 0});
    const auto s = skin_curves<double>({a, b}, {0.0, 1.0}, 1);
    for (int i = 0; i <= 10; ++i) {
        const double u = i / 10.0;
        CHECK((s.evaluate(u, 0.5) - 0.5 * (a.evaluate(u) + b.evaluate(u))).norm() < 1e-15);
    }
    CHECK(s.degree_u() == 1);
    CHECK(s.degree_v() == 1);
}

TEST_CASE("skinning translated airfoils recovers each section")
{
    CstParameters up{0.5, 1.0, {0.17, 0.16, 0.15, 0.14}, 0.0};
    CstParameters lo{0.5, 1.0, {-0.12, -0.1, -0.08, -0.06}, 0.0};
    const auto base = cst_to_curve(up, lo, 121, 20);
    std::vector<Curve> sections;
    for (int k = 0; k < 4; ++k) sections.push_back(translated(base, {0.1 * k, 1.0 * k, 0.05 * k * k}));
    const std::vector<double> v{0.0, 0.3, 0.7, 1.0};
    const auto s = skin_curves(sections, v, 3);
    CHECK(s.knots_u() == base.knots());
    for (int k = 0; k < 4; ++k)
        for (int i = 0; i < 64; ++i) {
            const double u = i / 63.0;
            REQUIRE((s.evaluate(u, v[static_cast<std::size_t>(k)]) - sections[static_cast<std::size_t>(k)].evaluate(u)).norm() <= 1e-9);
        }
}

TEST_CASE("skinning rejects bad input")
{
    const auto a = segment({0, 0, 0}, {1, 0, 0});
    CHECK_THROWS_AS(skin_curves<double>({a}, {0.0}, 1), InvalidArgument);
    const auto b = elevate_degree(segment({0, 1, 0}, {1, 1, 0}), 2);
    CHECK_THROWS_AS(skin_curves<double>({a, b}, {0.0, 1.0}, 1), InvalidArgument);
    CHECK_THROWS_AS(skin_curves<double>({a, a}, {0.0, 1.0}, 2), InvalidArgument);
    CHECK_THROWS_AS(skin_curves<double>({a, a}, {0.5, 0.5}, 1), InvalidArgument);
}

TEST_CASE("skinning isocurves of a surface reproduces its control grid")
{
    Gen g(31);
    for (int trial = 0; trial < 30; ++trial) {
        const int du = g.integer(1, 4), dv = g.integer(1, 3);
        const int nv = g.integer(dv + 1, dv + 5);
        const auto v = g.params(nv);
        const auto kv = averaged_knots(v, dv);
        const auto ku = g.knots(du, g.integer(du + 1, du + 6));
        const auto nu = static_cast<Eigen::Index>(ku.num_control_points(du));
        const Surface src(du, dv, ku, kv, g.points(static_cast<int>(nu), 3 * nv), 3);
        std::vector<Curve> iso;
        for (double vk : v) iso.push_back(src.isocurve_u(vk));
        const auto s = skin_curves(iso, v, dv);
        REQUIRE(s.knots_u() == ku);
        REQUIRE((s.net() - src.net()).norm() <= 1e-9);
    }
}

TEST_CASE("tensor-product interpolation")
{
    const std::vector<double> p01{0.0, 1.0};
    const auto k1 = averaged_knots(p01, 1);
    const auto square = tensor_interpolate(grid_of(p01, p01, [](double u, double v) { return PointRow<double>(Eigen::RowVector3d(u, v, 0)); }),
                                           p01, p01, 1, 1, k1, k1);
    CHECK((square.evaluate(0.25, 0.75) - Eigen::RowVector3d(0.25, 0.75, 0)).norm() < 1e-15);

    const std::vector<double> p3{0.0, 0.4, 1.0};
    const auto k2 = averaged_knots(p3, 2);
    auto f = [](double u, double v) { return PointRow<double>(Eigen::RowVector3d(u, v, u * v)); };
    const auto s = tensor_interpolate(grid_of(p3, p3, f), p3, p3, 2, 2, k2, k2);
    for (double u : p3)
        for (double v : p3) CHECK((s.evaluate(u, v) - f(u, v)).norm() < 1e-9);
    // x*y is bi-quadratic-representable, so it is reproduced everywhere
    CHECK((s.evaluate(0.7, 0.2) - f(0.7, 0.2)).norm() < 1e-12);

    CHECK_THROWS_AS(tensor_interpolate(grid_of(std::vector<double>{0.5, 0.5}, p01, f), std::vector<double>{0.5, 0.5}, p01, 1, 1, k1, k1),
                    InvalidArgument);
}

TEST_CASE("tensor-product interpolation is symmetric under transposition")
{
    Gen g(32);
    for (int trial = 0; trial < 30; ++trial) {
        const int nu = g.integer(2, 7), nv = g.integer(2, 7);
        const int du = g.integer(1, std::min(3, nu - 1)), dv = g.integer(1, std::min(3, nv - 1));
        const auto up = g.params(nu), vp = g.params(nv);
        const auto ku = averaged_knots(up, du), kv = averaged_knots(vp, dv);
        std::vector<std::vector<PointRow<double>>> grid(static_cast<std::size_t>(nu)), flipped(static_cast<std::size_t>(nv));
        for (int i = 0; i < nu; ++i)
            for (int j = 0; j < nv; ++j) {
                const PointRow<double> p = g.points(1).row(0);
                grid[static_cast<std::size_t>(i)].push_back(p);
            }
        for (int j = 0; j < nv; ++j)
            for (int i = 0; i < nu; ++i) flipped[static_cast<std::size_t>(j)].push_back(grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        const auto a = tensor_interpolate(grid, up, vp, du, dv, ku, kv);
        const auto b = tensor_interpolate(flipped, vp, up, dv, du, kv, ku);
        REQUIRE((a.transposed().net() - b.net()).norm() <= 1e-12 * std::max(1.0, a.net().norm()));
    }
}

TEST_CASE("loft of unrelated curves")
{
    const auto a = segment({0, 0, 0}, {1, 0, 0});
    const auto b = with_domain(elevate_degree(segment({0, 1, 0}, {1, 1, 1}), 3), 2.0, 5.0);
    const auto c = segment({0, 3, 0}, {1, 3, 0});
    const auto s = loft({a, b, c});
    CHECK(s.degree_v() == 2);
    CHECK((s.evaluate(0.5, 0) - a.evaluate(0.5)).norm() < 1e-12);
    CHECK((s.evaluate(0.5, 1) - c.evaluate(0.5)).norm() < 1e-12);
}
