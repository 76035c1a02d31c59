#pragma once
// Reference implementations and generators used only by the tests. They follow the
// textbook definitions directly and share no code with the library algorithms.

#include "cnet/bspline_curve.hpp"
#include "cnet/bspline_surface.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace oracle {

using cnet::Curve;
using cnet::KnotVector;
using cnet::PointMatrix;
using cnet::Surface;

/// Cox-de Boor recursion, 0/0 = 0. Half-open spans, except the last nonempty span is closed.
inline double basis(int i, int p, double u, const std::vector<double>& t)
{
    if (p == 0) {
        if (t[i] <= u && u < t[i + 1]) return 1.0;
        // right end of the domain belongs to the last nonempty span
        if (u == t[i + 1] && t[i] < t[i + 1]) {
            bool last = true;
            for (std::size_t k = i + 1; k + 1 < t.size(); ++k)
                if (t[k] < t[k + 1]) last = false;
            return last ? 1.0 : 0.0;
        }
        return 0.0;
    }
    double a = 0, b = 0;
    if (t[i + p] > t[i]) a = (u - t[i]) / (t[i + p] - t[i]) * basis(i, p - 1, u, t);
    if (t[i + p + 1] > t[i + 1]) b = (t[i + p + 1] - u) / (t[i + p + 1] - t[i + 1]) * basis(i + 1, p - 1, u, t);
    return a + b;
}

/// de Boor's triangular scheme on a clamped curve.
inline Eigen::RowVectorXd de_boor(const Curve& c, double u)
{
    const auto& t = c.knots().values();
    const int p = c.degree();
    const auto n = static_cast<int>(c.num_control_points());
    int k = p;
    while (k + 1 < n && t[static_cast<std::size_t>(k + 1)] <= u) ++k;
    std::vector<Eigen::RowVectorXd> d;
    for (int j = 0; j <= p; ++j) d.emplace_back(c.control_points().row(k - p + j));
    for (int r = 1; r <= p; ++r)
        for (int j = p; j >= r; --j) {
            const double lo = t[static_cast<std::size_t>(j + k - p)], hi = t[static_cast<std::size_t>(j + 1 + k - r)];
            const double a = (hi > lo) ? (u - lo) / (hi - lo) : 0.0;
            d[static_cast<std::size_t>(j)] = (1 - a) * d[static_cast<std::size_t>(j - 1)] + a * d[static_cast<std::size_t>(j)];
        }
    return d[static_cast<std::size_t>(p)];
}

/// Coons patch of four boundary curves over [0,1]^2: c0(u) = s(u,0), c1(u) = s(u,1),
/// d0(v) = s(0,v), d1(v) = s(1,v).
inline Eigen::RowVector3d coons(const Curve& c0, const Curve& c1, const Curve& d0, const Curve& d1, double u, double v)
{
    const Eigen::RowVector3d ruled_u = (1 - v) * c0.evaluate(u) + v * c1.evaluate(u);
    const Eigen::RowVector3d ruled_v = (1 - u) * d0.evaluate(v) + u * d1.evaluate(v);
    const Eigen::RowVector3d p00 = c0.evaluate(0), p10 = c0.evaluate(1), p01 = c1.evaluate(0), p11 = c1.evaluate(1);
    const Eigen::RowVector3d bilinear = (1 - u) * (1 - v) * p00 + u * (1 - v) * p10 + (1 - u) * v * p01 + u * v * p11;
    return ruled_u + ruled_v - bilinear;
}

/// Closest sampled approach of two curves over [0,1]: returns (s, t, distance).
struct BruteHit {
    double s, t, distance;
};
inline BruteHit brute_intersection(const Curve& a, const Curve& b, int samples)
{
    std::vector<Eigen::RowVectorXd> pa, pb;
    for (int i = 0; i < samples; ++i) pa.push_back(a.evaluate(double(i) / (samples - 1)));
    // coarse pass on b, then local refinement around the best pair
    const int coarse = std::max(2, samples / 10);
    for (int j = 0; j < coarse; ++j) pb.push_back(b.evaluate(double(j) / (coarse - 1)));
    BruteHit best{0, 0, 1e300};
    for (int i = 0; i < samples; ++i)
        for (int j = 0; j < coarse; ++j) {
            const double d = (pa[static_cast<std::size_t>(i)] - pb[static_cast<std::size_t>(j)]).norm();
            if (d < best.distance) best = {double(i) / (samples - 1), double(j) / (coarse - 1), d};
        }
    const double t0 = best.t;
    for (int j = -samples / 2; j <= samples / 2; ++j) {
        const double t = std::clamp(t0 + double(j) / (samples - 1) / (coarse - 1) * 2, 0.0, 1.0);
        const auto q = b.evaluate(t);
        for (int i = 0; i < samples; ++i) {
            const double d = (pa[static_cast<std::size_t>(i)] - q).norm();
            if (d < best.distance) best = {double(i) / (samples - 1), t, d};
        }
    }
    return best;
}

// Generators

struct Gen {
    std::mt19937_64 rng;
    explicit Gen(std::uint64_t seed) : rng(seed) {}

    double uniform(double a = 0, double b = 1) { return std::uniform_real_distribution<double>(a, b)(rng); }
    int integer(int a, int b) { return std::uniform_int_distribution<int>(a, b)(rng); }

    /// Clamped knot vector over [a,b]; interior knots random but at least
    /// `min_gap` of the range apart, some repeated (up to min(max_mult, degree)).
    KnotVector<double> knots(int degree, int n_ctrl, int max_mult = 1, double a = 0, double b = 1,
                             double min_gap = 0.02)
    {
        std::vector<double> interior;
        while (static_cast<int>(interior.size()) < n_ctrl - degree - 1) {
            const double k = a + (b - a) * uniform(min_gap, 1 - min_gap);
            bool crowded = false;
            for (double e : interior) crowded = crowded || std::abs(e - k) < min_gap * (b - a);
            if (crowded) continue;
            const int m = std::min(integer(1, std::max(1, std::min(max_mult, degree))), n_ctrl - degree - 1 - static_cast<int>(interior.size()));
            for (int r = 0; r < m; ++r) interior.push_back(k);
        }
        std::sort(interior.begin(), interior.end());
        std::vector<double> t(static_cast<std::size_t>(degree) + 1, a);
        t.insert(t.end(), interior.begin(), interior.end());
        t.insert(t.end(), static_cast<std::size_t>(degree) + 1, b);
        return KnotVector<double>(t);
    }

    PointMatrix<double> points(int n, int dim = 3, double scale = 1)
    {
        PointMatrix<double> p(n, dim);
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < dim; ++k) p(i, k) = uniform(-scale, scale);
        return p;
    }

    Curve curve(int degree, int n_ctrl, int max_mult = 1, double min_gap = 0.02)
    {
        return Curve(degree, knots(degree, n_ctrl, max_mult, 0, 1, min_gap), points(n_ctrl));
    }

    /// Strictly increasing parameters from 0 to 1 with gaps bounded away from zero.
    std::vector<double> params(int n)
    {
        std::vector<double> gaps;
        double total = 0;
        for (int i = 1; i < n; ++i) total += gaps.emplace_back(uniform(0.5, 1.5));
        std::vector<double> out{0.0};
        double acc = 0;
        for (double g : gaps) out.push_back((acc += g) / total);
        out.back() = 1.0;
        return out;
    }
};

inline double max_deviation(const Curve& a, const Curve& b, int samples)
{
    double worst = 0;
    const auto [lo, hi] = a.domain();
    for (int i = 0; i < samples; ++i) {
        const double u = lo + (hi - lo) * i / (samples - 1);
        worst = std::max(worst, (a.evaluate(u) - b.evaluate(u)).norm());
    }
    return worst;
}

inline double max_deviation(const Surface& a, const Surface& b, int samples)
{
    double worst = 0;
    for (int i = 0; i < samples; ++i)
        for (int j = 0; j < samples; ++j) {
            const double u = double(i) / (samples - 1), v = double(j) / (samples - 1);
            worst = std::max(worst, (a.evaluate(u, v) - b.evaluate(u, v)).norm());
        }
    return worst;
}

} // namespace oracle
