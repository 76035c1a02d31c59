#pragma once
// Synthetic curve networks for tests and the acceptance run.

#include "cnet/curve_network.hpp"
#include "cnet/interpolation.hpp"
#include "cnet/profiles.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace nets {

using cnet::Curve;
using cnet::CurveNetwork;
using cnet::PointMatrix;

inline PointMatrix<double> to_rows(const std::vector<Eigen::RowVector3d>& pts)
{
    PointMatrix<double> m(static_cast<Eigen::Index>(pts.size()), 3);
    for (std::size_t i = 0; i < pts.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = pts[i];
    return m;
}

inline Curve through(const std::vector<Eigen::RowVector3d>& pts)
{
    const auto m = to_rows(pts);
    const int degree = std::min<int>(3, static_cast<int>(pts.size()) - 1);
    return cnet::interpolate_points(m, cnet::chord_length_params(m), degree);
}

/// Closed elliptic cross-sections along x (seam at the top), guides through points at
/// profile parameters that wobble around a common value, so both families need
/// reparametrization. Guide 0 and guide M-1 both run along the seam.
inline CurveNetwork fuselage(int n_profiles, int n_guides, double wobble = 0.15)
{
    constexpr int ring = 24;
    CurveNetwork net;
    for (int k = 0; k < n_profiles; ++k) {
        const double s = double(k) / (n_profiles - 1);
        const double x = 10.0 * s;
        const double r = 0.3 + 1.0 * std::sin(std::numbers::pi * (0.1 + 0.8 * s));
        const double zc = 0.3 * s * s;
        std::vector<Eigen::RowVector3d> pts;
        for (int j = 0; j <= ring; ++j) {
            const double phi = 2 * std::numbers::pi * j / ring;
            pts.emplace_back(x, r * std::sin(phi) * (1.0 + 0.1 * std::cos(phi)), zc + 1.2 * r * std::cos(phi));
        }
        pts.back() = pts.front();
        net.profiles.push_back(through(pts));
    }
    const double spacing = 1.0 / (n_guides - 1);
    for (int l = 0; l < n_guides; ++l) {
        std::vector<Eigen::RowVector3d> pts;
        for (int k = 0; k < n_profiles; ++k) {
            double u = l * spacing;
            if (l > 0 && l + 1 < n_guides) u += wobble * spacing * std::sin(1.7 * k + 2.3 * l);
            pts.emplace_back(net.profiles[static_cast<std::size_t>(k)].evaluate(l + 1 == n_guides ? 1.0 : u));
        }
        net.guides.push_back(through(pts));
    }
    return net;
}

/// Boundary curves of a 2x2 network: profiles at v=0,1, guides at u=0,1.
/// `bulge` bends the boundaries in-plane; `lift` bends them out of plane.
inline CurveNetwork patch(double bulge, double lift)
{
    CurveNetwork net;
    const Eigen::RowVector3d p00(0, 0, 0), p10(2, 0, 0), p01(0, 1.5, 0), p11(2.2, 1.7, 0);
    auto bend = [&](Eigen::RowVector3d a, Eigen::RowVector3d b, Eigen::RowVector3d dir, double phase) {
        std::vector<Eigen::RowVector3d> pts;
        for (int i = 0; i <= 6; ++i) {
            const double t = i / 6.0;
            const double w = 4 * t * (1 - t);
            pts.push_back((1 - t) * a + t * b + bulge * w * dir +
                          Eigen::RowVector3d(0, 0, lift * std::sin(std::numbers::pi * t) * std::cos(phase * t)));
        }
        return through(pts);
    };
    net.profiles.push_back(bend(p00, p10, {0, -0.3, 0}, 1.0));
    net.profiles.push_back(bend(p01, p11, {0, 0.2, 0}, 2.0));
    net.guides.push_back(bend(p00, p01, {-0.25, 0, 0}, 0.5));
    net.guides.push_back(bend(p10, p11, {0.35, 0, 0}, 1.5));
    return net;
}

inline Curve moved(const Curve& c, const Eigen::Matrix3d& R, const Eigen::RowVector3d& t)
{
    PointMatrix<double> p = c.control_points() * R.transpose();
    p.rowwise() += t;
    return Curve(c.degree(), c.knots(), p, c.periodic());
}

inline CurveNetwork moved(const CurveNetwork& n, const Eigen::Matrix3d& R, const Eigen::RowVector3d& t)
{
    CurveNetwork out;
    for (const auto& c : n.profiles) out.profiles.push_back(moved(c, R, t));
    for (const auto& c : n.guides) out.guides.push_back(moved(c, R, t));
    return out;
}

} // namespace nets
