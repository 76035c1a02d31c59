#include "cnet/curve_network.hpp"

#include "cnet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace cnet {

namespace {

constexpr double kSameHit = 1e-4;
constexpr double kEndSnap = 1e-6;
constexpr std::size_t kMaxCandidates = 20000;

struct Piece {
    double a = 0;
    double b = 0;
    PointMatrix<double> ctrl;
    Eigen::AlignedBox3d box;
};

Eigen::AlignedBox3d bounding_box(const PointMatrix<double>& ctrl)
{
    Eigen::AlignedBox3d box;
    for (Eigen::Index i = 0; i < ctrl.rows(); ++i) box.extend(Eigen::Vector3d(ctrl.row(i).transpose()));
    return box;
}

std::vector<Piece> bezier_pieces(const Curve& curve)
{
    Curve c = to_clamped(curve);
    const int p = c.degree();
    for (const auto& [value, mult] : c.knots().unique_with_multiplicity()) {
        const auto [lo, hi] = c.domain();
        if (value > lo && value < hi && mult < p) c = insert_knot(c, value, p - mult);
    }
    std::vector<Piece> pieces;
    const auto groups = c.knots().unique_with_multiplicity();
    for (std::size_t g = 0; g + 1 < groups.size(); ++g) {
        Piece piece;
        piece.a = groups[g].first;
        piece.b = groups[g + 1].first;
        piece.ctrl = c.control_points().middleRows(static_cast<Eigen::Index>(g) * p, p + 1);
        piece.box = bounding_box(piece.ctrl);
        pieces.push_back(std::move(piece));
    }
    return pieces;
}

std::pair<Piece, Piece> split(const Piece& piece)
{
    const Eigen::Index p = piece.ctrl.rows() - 1;
    PointMatrix<double> work = piece.ctrl;
    Piece left, right;
    left.ctrl.resize(p + 1, 3);
    right.ctrl.resize(p + 1, 3);
    left.ctrl.row(0) = work.row(0);
    right.ctrl.row(p) = work.row(p);
    for (Eigen::Index level = 1; level <= p; ++level) {
        for (Eigen::Index i = 0; i <= p - level; ++i) work.row(i) = 0.5 * (work.row(i) + work.row(i + 1));
        left.ctrl.row(level) = work.row(0);
        right.ctrl.row(p - level) = work.row(p - level);
    }
    const double mid = 0.5 * (piece.a + piece.b);
    left.a = piece.a;
    left.b = mid;
    right.a = mid;
    right.b = piece.b;
    left.box = bounding_box(left.ctrl);
    right.box = bounding_box(right.ctrl);
    return {std::move(left), std::move(right)};
}

double diag(const Eigen::AlignedBox3d& box) { return box.diagonal().norm(); }

bool near(const Eigen::AlignedBox3d& a, const Eigen::AlignedBox3d& b, double tol)
{
    return (a.min().array() - tol <= b.max().array()).all() && (b.min().array() - tol <= a.max().array()).all();
}

Eigen::AlignedBox3d curve_box(const Curve& c) { return bounding_box(c.control_points()); }

struct PairSearch {
    double tol;
    double leaf;
    std::vector<std::pair<double, double>> candidates;

    void run(const Piece& a, const Piece& b, int depth)
    {
        if (!near(a.box, b.box, tol)) return;
        if (candidates.size() > kMaxCandidates)
            throw AmbiguityError("curves overlap along a segment (too many intersection candidates)");
        const bool a_leaf = diag(a.box) <= leaf || depth > 60;
        const bool b_leaf = diag(b.box) <= leaf || depth > 60;
        if (a_leaf && b_leaf) {
            candidates.emplace_back(0.5 * (a.a + a.b), 0.5 * (b.a + b.b));
            return;
        }
        if (!a_leaf && (b_leaf || diag(a.box) >= diag(b.box))) {
            const auto [l, r] = split(a);
            run(l, b, depth + 1);
            run(r, b, depth + 1);
        } else {
            const auto [l, r] = split(b);
            run(a, l, depth + 1);
            run(a, r, depth + 1);
        }
    }
};

CurveCurveHit refine_pair(const Curve& f, const Curve& g, double s, double t)
{
    auto residual = [&](double ss, double tt) { return (f.evaluate(ss) - g.evaluate(tt)).norm(); };
    double r = residual(s, t);
    for (int it = 0; it < 100 && r > 0; ++it) {
        const auto df = f.derivatives(s, 1);
        const auto dg = g.derivatives(t, 1);
        const Eigen::RowVectorXd diff = df.row(0) - dg.row(0);
        Eigen::Matrix<double, Eigen::Dynamic, 2> jac(diff.size(), 2);
        jac.col(0) = df.row(1).transpose();
        jac.col(1) = -dg.row(1).transpose();
        Eigen::Matrix2d h = jac.transpose() * jac;
        h.diagonal().array() += 1e-14 * (h.trace() + 1e-300);
        const Eigen::Vector2d grad = jac.transpose() * diff.transpose();
        Eigen::Vector2d step = -h.ldlt().solve(grad);
        if (!step.allFinite()) break;
        bool improved = false;
        for (int half = 0; half < 40; ++half) {
            const double ns = std::clamp(s + step[0], 0.0, 1.0);
            const double nt = std::clamp(t + step[1], 0.0, 1.0);
            const double nr = residual(ns, nt);
            if (nr < r) {
                const double moved = std::abs(ns - s) + std::abs(nt - t);
                s = ns;
                t = nt;
                r = nr;
                improved = moved > 1e-16;
                break;
            }
            step *= 0.5;
        }
        if (!improved) break;
    }
    return {s, t, r};
}

CurvePointHit refine_point(const Curve& c, const Point3& p, double s)
{
    auto residual = [&](double ss) { return (c.evaluate(ss) - p).norm(); };
    double r = residual(s);
    for (int it = 0; it < 100 && r > 0; ++it) {
        const auto d = c.derivatives(s, 2);
        const Eigen::RowVectorXd diff = d.row(0) - p;
        const double grad = diff.dot(d.row(1));
        double hess = d.row(1).squaredNorm() + diff.dot(d.row(2));
        if (!(hess > 0)) hess = d.row(1).squaredNorm() + 1e-300;
        double step = -grad / hess;
        bool improved = false;
        for (int half = 0; half < 40; ++half) {
            const double ns = std::clamp(s + step, 0.0, 1.0);
            const double nr = residual(ns);
            if (nr < r) {
                improved = std::abs(ns - s) > 1e-16;
                s = ns;
                r = nr;
                break;
            }
            step *= 0.5;
        }
        if (!improved) break;
    }
    return {s, r};
}

double snap(double x)
{
    if (x < kEndSnap) return 0.0;
    if (x > 1.0 - kEndSnap) return 1.0;
    return x;
}

} // namespace

CurveNetwork normalized(const CurveNetwork& network)
{
    CurveNetwork out;
    for (const auto& c : network.profiles) out.profiles.push_back(with_domain(to_clamped(c), 0.0, 1.0));
    for (const auto& c : network.guides) out.guides.push_back(with_domain(to_clamped(c), 0.0, 1.0));
    return out;
}

double network_diagonal(const CurveNetwork& network)
{
    Eigen::AlignedBox3d box;
    for (const auto* family : {&network.profiles, &network.guides})
        for (const auto& c : *family) box.extend(curve_box(c));
    return box.isEmpty() ? 0.0 : diag(box);
}

std::vector<CurveCurveHit> intersect_curves(const Curve& a, const Curve& b, double tol)
{
    Eigen::AlignedBox3d both = curve_box(a);
    both.extend(curve_box(b));
    PairSearch search{tol, std::max(1e-2 * diag(both), tol), {}};
    const auto pa = bezier_pieces(a);
    const auto pb = bezier_pieces(b);
    for (const auto& x : pa)
        for (const auto& y : pb) search.run(x, y, 0);

    std::vector<CurveCurveHit> hits;
    for (const auto& [s0, t0] : search.candidates) {
        auto hit = refine_pair(a, b, s0, t0);
        if (hit.distance > tol) continue;
        const double ss = snap(hit.s), ts = snap(hit.t);
        if (ss != hit.s || ts != hit.t) {
            const double d = (a.evaluate(ss) - b.evaluate(ts)).norm();
            if (d <= tol) hit = {ss, ts, d};
        }
        auto same = std::find_if(hits.begin(), hits.end(), [&](const CurveCurveHit& h) {
            return std::abs(h.s - hit.s) <= kSameHit && std::abs(h.t - hit.t) <= kSameHit;
        });
        if (same == hits.end())
            hits.push_back(hit);
        else if (hit.distance < same->distance)
            *same = hit;
    }
    std::sort(hits.begin(), hits.end(), [](const auto& x, const auto& y) { return x.s < y.s; });
    return hits;
}

std::vector<CurvePointHit> project_point(const Curve& c, const Point3& point, double tol)
{
    const Eigen::AlignedBox3d cb = curve_box(c);
    const double leaf = std::max(1e-2 * diag(cb), tol);
    const Eigen::Vector3d p = point.transpose();
    std::vector<double> candidates;

    std::vector<Piece> stack = bezier_pieces(c);
    int visited = 0;
    while (!stack.empty()) {
        Piece piece = std::move(stack.back());
        stack.pop_back();
        if (++visited > 200000) throw AmbiguityError("point lies on a curve segment of zero extent");
        if (piece.box.exteriorDistance(p) > tol) continue;
        if (diag(piece.box) <= leaf || piece.b - piece.a < 1e-12) {
            candidates.push_back(0.5 * (piece.a + piece.b));
            continue;
        }
        auto [l, r] = split(piece);
        stack.push_back(std::move(r));
        stack.push_back(std::move(l));
    }

    std::vector<CurvePointHit> hits;
    for (const double s0 : candidates) {
        auto hit = refine_point(c, point, s0);
        if (hit.distance > tol) continue;
        const double ss = snap(hit.s);
        if (ss != hit.s) {
            const double d = (c.evaluate(ss) - point).norm();
            if (d <= tol) hit = {ss, d};
        }
        auto same = std::find_if(hits.begin(), hits.end(),
                                 [&](const CurvePointHit& h) { return std::abs(h.s - hit.s) <= kSameHit; });
        if (same == hits.end())
            hits.push_back(hit);
        else if (hit.distance < same->distance)
            *same = hit;
    }
    std::sort(hits.begin(), hits.end(), [](const auto& x, const auto& y) { return x.s < y.s; });
    return hits;
}

namespace {

std::string pair_name(std::size_t k, std::size_t l)
{
    return "profile " + std::to_string(k) + " and guide " + std::to_string(l);
}

double closest_sampled_distance(const Curve& a, const Curve& b)
{
    constexpr int n = 200;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n; ++i) {
        const Point3 pa = a.evaluate(double(i) / n);
        for (int j = 0; j <= n; ++j) best = std::min(best, (pa - Point3(b.evaluate(double(j) / n))).norm());
    }
    return best;
}

} // namespace

IntersectionGrid compute_intersections(const CurveNetwork& input, double tol)
{
    const std::size_t N = input.profiles.size(), M = input.guides.size();
    if (N < 2 || M < 2)
        throw NetworkError("curve network needs at least 2 profiles and 2 guides (got " + std::to_string(N) +
                           " and " + std::to_string(M) + ")");
    for (const auto* family : {&input.profiles, &input.guides})
        for (const auto& c : *family)
            if (c.dimension() != 3) throw NetworkError("network curves must be three-dimensional");
    const CurveNetwork net = normalized(input);

    IntersectionGrid grid;
    grid.u_tilde.resize(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(M));
    grid.v_tilde.resize(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(M));
    grid.points.assign(N, std::vector<Point3>(M));

    for (std::size_t k = 0; k < N; ++k) {
        const Curve& f = net.profiles[k];
        for (std::size_t l = 0; l < M; ++l) {
            const Curve& g = net.guides[l];
            const bool fixed_u = (l == 0 || l == M - 1);
            const bool fixed_v = (k == 0 || k == N - 1);
            double u = (l == 0) ? 0.0 : 1.0;
            double v = (k == 0) ? 0.0 : 1.0;

            if (fixed_u && fixed_v) {
                const double d = (f.evaluate(u) - g.evaluate(v)).norm();
                if (d > tol)
                    throw NetworkError(pair_name(k, l) + " do not meet at the network corner (distance " +
                                       std::to_string(d) + ")");
            } else if (fixed_u || fixed_v) {
                const Curve& onto = fixed_u ? g : f;
                const Point3 p = fixed_u ? Point3(f.evaluate(u)) : Point3(g.evaluate(v));
                const auto hits = project_point(onto, p, tol);
                if (hits.empty())
                    throw NetworkError(pair_name(k, l) + " do not intersect: the " +
                                       (fixed_u ? std::string("profile end") : std::string("guide end")) +
                                       " is not on the other curve");
                if (hits.size() > 1)
                    throw AmbiguityError(pair_name(k, l) + " intersect " + std::to_string(hits.size()) +
                                         " times");
                (fixed_u ? v : u) = hits.front().s;
            } else {
                const auto hits = intersect_curves(f, g, tol);
                if (hits.empty())
                    throw NetworkError(pair_name(k, l) + " do not intersect (closest distance about " +
                                       std::to_string(closest_sampled_distance(f, g)) + ")");
                if (hits.size() > 1)
                    throw AmbiguityError(pair_name(k, l) + " intersect " + std::to_string(hits.size()) +
                                         " times");
                u = hits.front().s;
                v = hits.front().t;
            }
            const auto ki = static_cast<Eigen::Index>(k), li = static_cast<Eigen::Index>(l);
            grid.u_tilde(ki, li) = u;
            grid.v_tilde(ki, li) = v;
            grid.points[k][l] = 0.5 * (f.evaluate(u) + g.evaluate(v));
        }
    }

    for (Eigen::Index k = 0; k < grid.u_tilde.rows(); ++k)
        for (Eigen::Index l = 1; l < grid.u_tilde.cols(); ++l)
            if (!(grid.u_tilde(k, l - 1) < grid.u_tilde(k, l)))
                throw NetworkError("guides " + std::to_string(l - 1) + " and " + std::to_string(l) +
                                   " cross profile " + std::to_string(k) + " out of order");
    for (Eigen::Index l = 0; l < grid.v_tilde.cols(); ++l)
        for (Eigen::Index k = 1; k < grid.v_tilde.rows(); ++k)
            if (!(grid.v_tilde(k - 1, l) < grid.v_tilde(k, l)))
                throw NetworkError("profiles " + std::to_string(k - 1) + " and " + std::to_string(k) +
                                   " cross guide " + std::to_string(l) + " out of order");

    auto averaged = [](const Eigen::VectorXd& means) {
        std::vector<double> out(static_cast<std::size_t>(means.size()));
        const double lo = means[0], hi = means[means.size() - 1];
        for (Eigen::Index i = 0; i < means.size(); ++i) out[static_cast<std::size_t>(i)] = (means[i] - lo) / (hi - lo);
        out.front() = 0.0;
        out.back() = 1.0;
        return out;
    };
    grid.u_avg = averaged(grid.u_tilde.colwise().mean().transpose());
    grid.v_avg = averaged(grid.v_tilde.rowwise().mean());
    return grid;
}

} // namespace cnet
