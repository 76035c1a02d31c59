#pragma once

#include "cnet/basis.hpp"
#include "cnet/bspline_curve.hpp"
#include "cnet/errors.hpp"
#include "cnet/linear_solve.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace cnet {

enum class Parametrization { ChordLength, Centripetal };

template <typename Scalar>
struct EndTangents {
    std::optional<PointRow<Scalar>> start;
    std::optional<PointRow<Scalar>> end;
};

namespace detail {

template <typename Scalar>
void require_strictly_increasing(const std::vector<Scalar>& params, const char* what)
{
    for (std::size_t i = 0; i + 1 < params.size(); ++i)
        if (!(params[i] < params[i + 1]))
            throw InvalidArgument(std::string(what) + ": parameters not strictly increasing at index " +
                                  std::to_string(i + 1));
}

template <typename Scalar>
std::vector<Scalar> exponent_params(const PointMatrix<Scalar>& points, Scalar exponent)
{
    const Eigen::Index n = points.rows();
    if (n < 2) throw InvalidArgument("parametrization needs at least 2 points");
    std::vector<Scalar> params(static_cast<std::size_t>(n), Scalar(0));
    for (Eigen::Index i = 1; i < n; ++i) {
        using std::pow;
        const Scalar d = (points.row(i) - points.row(i - 1)).norm();
        if (!(d > Scalar(0)))
            throw InvalidArgument("parametrization: points " + std::to_string(i - 1) + " and " +
                                  std::to_string(i) + " coincide");
        params[static_cast<std::size_t>(i)] = params[static_cast<std::size_t>(i - 1)] + pow(d, exponent);
    }
    const Scalar total = params.back();
    for (auto& p : params) p /= total;
    params.back() = Scalar(1);
    return params;
}

} // namespace detail

/// Parameters in [0,1] proportional to cumulative chord length.
template <typename Scalar>
std::vector<Scalar> chord_length_params(const PointMatrix<Scalar>& points)
{
    return detail::exponent_params(points, Scalar(1));
}

template <typename Scalar>
std::vector<Scalar> centripetal_params(const PointMatrix<Scalar>& points)
{
    return detail::exponent_params(points, Scalar(0.5));
}

template <typename Scalar>
std::vector<Scalar> make_params(const PointMatrix<Scalar>& points, Parametrization kind)
{
    return kind == Parametrization::ChordLength ? chord_length_params(points)
                                                : centripetal_params(points);
}

/// Drops points that coincide (within `tol`) with their predecessor.
template <typename Scalar>
PointMatrix<Scalar> collapse_duplicates(const PointMatrix<Scalar>& points, Scalar tol = Scalar(0))
{
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < points.rows(); ++i)
        if (keep.empty() || (points.row(i) - points.row(keep.back())).norm() > tol) keep.push_back(i);
    PointMatrix<Scalar> out(static_cast<Eigen::Index>(keep.size()), points.cols());
    for (std::size_t i = 0; i < keep.size(); ++i) out.row(static_cast<Eigen::Index>(i)) = points.row(keep[i]);
    return out;
}

/// Rows of basis values at each parameter: the interpolation/approximation matrix.
template <typename Scalar>
DenseMatrix<Scalar> collocation_matrix(const std::vector<Scalar>& params, int degree,
                                       const KnotVector<Scalar>& knots)
{
    const auto n = static_cast<Eigen::Index>(knots.num_control_points(degree));
    DenseMatrix<Scalar> m = DenseMatrix<Scalar>::Zero(static_cast<Eigen::Index>(params.size()), n);
    for (std::size_t r = 0; r < params.size(); ++r) {
        const auto b = basis_functions(params[r], degree, knots);
        for (int j = 0; j <= degree; ++j)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(b.first) + j) = b.values[j];
    }
    return m;
}

/// Interpolates `points` at `params` with a prescribed degree and knot vector.
template <typename Scalar>
BSplineCurve<Scalar> interpolate_with_knots(const PointMatrix<Scalar>& points,
                                            const std::vector<Scalar>& params, int degree,
                                            const KnotVector<Scalar>& knots)
{
    if (static_cast<std::size_t>(points.rows()) != params.size())
        throw InvalidArgument("interpolation: " + std::to_string(points.rows()) + " points but " +
                              std::to_string(params.size()) + " parameters");
    detail::require_strictly_increasing(params, "interpolation");
    if (knots.num_control_points(degree) != params.size())
        throw InvalidArgument("interpolation: knot vector carries " +
                              std::to_string(knots.num_control_points(degree)) +
                              " control points, expected " + std::to_string(params.size()));
    const auto a = collocation_matrix(params, degree, knots);
    PointMatrix<Scalar> ctrl = solve_linear(a, points);
    return BSplineCurve<Scalar>(degree, knots, std::move(ctrl));
}

namespace detail {

template <typename Scalar>
BSplineCurve<Scalar> interpolate_periodic(const PointMatrix<Scalar>& points,
                                          const std::vector<Scalar>& params, int degree)
{
    using std::floor;
    const Eigen::Index n = points.rows() - 1; // distinct points
    const Scalar scale = Scalar(1) + points.cwiseAbs().maxCoeff();
    if ((points.row(0) - points.row(n)).norm() > Scalar(1e-12) * scale)
        throw InvalidArgument("periodic interpolation: first and last point differ");
    if (n < degree + 1)
        throw InvalidArgument("periodic interpolation: " + std::to_string(n) +
                              " distinct points cannot carry degree " + std::to_string(degree));
    const Scalar period = params.back() - params.front();

    // Odd degrees place knots at the parameters; even degrees shift them to the
    // parameter midpoints, which keeps the collocation matrix nonsingular.
    std::vector<Scalar> base(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto si = static_cast<std::size_t>(i);
        base[si] = (degree % 2 == 1) ? params[si] : (params[si] + params[si + 1]) / Scalar(2);
    }
    const int p = degree;
    std::vector<Scalar> knots(static_cast<std::size_t>(n + 2 * p + 1));
    for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(knots.size()); ++j) {
        const Eigen::Index m = j - p;
        const Eigen::Index wraps = static_cast<Eigen::Index>(floor(Scalar(m) / Scalar(n)));
        const Eigen::Index idx = m - wraps * n;
        knots[static_cast<std::size_t>(j)] = base[static_cast<std::size_t>(idx)] + Scalar(wraps) * period;
    }
    const KnotVector<Scalar> kv(std::move(knots));
    const auto [lo, hi] = kv.domain(p);

    DenseMatrix<Scalar> a = DenseMatrix<Scalar>::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        Scalar u = params[static_cast<std::size_t>(i)];
        if (u < lo) u += period;
        if (u > hi) u -= period;
        const auto b = basis_functions(u, p, kv);
        for (int j = 0; j <= p; ++j)
            a(i, (static_cast<Eigen::Index>(b.first) + j) % n) += b.values[j];
    }
    const DenseMatrix<Scalar> q = solve_linear(a, points.topRows(n));
    PointMatrix<Scalar> ctrl(n + p, points.cols());
    for (Eigen::Index i = 0; i < n + p; ++i) ctrl.row(i) = q.row(i % n);
    return BSplineCurve<Scalar>(p, kv, std::move(ctrl), true);
}

} // namespace detail

/// Interpolating B-spline through `points` at `params`.
///
/// Clamped curves use knot averaging; optional end tangents add one derivative condition
/// per end. Periodic curves require the first and last point to coincide and come back
/// C^(degree-1) across the seam.
template <typename Scalar>
BSplineCurve<Scalar> interpolate_points(const PointMatrix<Scalar>& points,
                                        const std::vector<Scalar>& params, int degree,
                                        bool periodic = false,
                                        const EndTangents<Scalar>& tangents = {})
{
    const Eigen::Index n = points.rows();
    if (n < 2) throw InvalidArgument("interpolation needs at least 2 points");
    if (static_cast<std::size_t>(n) != params.size())
        throw InvalidArgument("interpolation: " + std::to_string(n) + " points but " +
                              std::to_string(params.size()) + " parameters");
    if (degree < 1) throw InvalidArgument("interpolation degree must be at least 1");
    detail::require_strictly_increasing(params, "interpolation");

    if (periodic) {
        if (tangents.start || tangents.end)
            throw InvalidArgument("periodic interpolation does not take end tangents");
        return detail::interpolate_periodic(points, params, degree);
    }

    const int extra = (tangents.start ? 1 : 0) + (tangents.end ? 1 : 0);
    const Eigen::Index unknowns = n + extra;
    if (unknowns < degree + 1)
        throw InvalidArgument("interpolation: " + std::to_string(unknowns) +
                              " conditions cannot determine a curve of degree " +
                              std::to_string(degree));

    std::vector<Scalar> extended;
    if (tangents.start) extended.push_back(params.front());
    extended.insert(extended.end(), params.begin(), params.end());
    if (tangents.end) extended.push_back(params.back());
    const auto knots = averaged_knots(extended, degree);

    DenseMatrix<Scalar> a = DenseMatrix<Scalar>::Zero(unknowns, unknowns);
    PointMatrix<Scalar> rhs(unknowns, points.cols());
    Eigen::Index row = 0;
    auto add_row = [&](Scalar u, int order, const PointRow<Scalar>& value) {
        const auto b = basis_derivatives(u, degree, knots, order);
        for (int j = 0; j <= degree; ++j) a(row, static_cast<Eigen::Index>(b.first) + j) = b.values(order, j);
        rhs.row(row) = value;
        ++row;
    };
    add_row(params.front(), 0, points.row(0));
    if (tangents.start) {
        if (tangents.start->size() != points.cols()) throw InvalidArgument("start tangent dimension mismatch");
        add_row(params.front(), 1, *tangents.start);
    }
    for (Eigen::Index i = 1; i + 1 < n; ++i) add_row(params[static_cast<std::size_t>(i)], 0, points.row(i));
    if (tangents.end) {
        if (tangents.end->size() != points.cols()) throw InvalidArgument("end tangent dimension mismatch");
        add_row(params.back(), 1, *tangents.end);
    }
    add_row(params.back(), 0, points.row(n - 1));

    PointMatrix<Scalar> ctrl = solve_linear(a, rhs);
    return BSplineCurve<Scalar>(degree, knots, std::move(ctrl));
}

/// A point the fitted curve must pass through at a given parameter.
template <typename Scalar>
struct FitConstraint {
    Scalar param;
    PointRow<Scalar> point;
};

/// Least-squares fit of `samples` over a fixed degree/knot space subject to exact
/// interpolation constraints, via the Lagrange-multiplier (KKT) normal equations.
template <typename Scalar>
BSplineCurve<Scalar> approximate_constrained(const PointMatrix<Scalar>& samples,
                                             const std::vector<Scalar>& sample_params,
                                             const std::vector<FitConstraint<Scalar>>& constraints,
                                             int degree, const KnotVector<Scalar>& knots)
{
    const auto n = static_cast<Eigen::Index>(knots.num_control_points(degree));
    const auto ns = samples.rows();
    if (static_cast<std::size_t>(ns) != sample_params.size())
        throw InvalidArgument("approximation: sample and parameter counts differ");
    if (n < degree + 1) throw InvalidArgument("approximation: knot vector too short for degree");
    if (ns <= n)
        throw InvalidArgument("approximation: " + std::to_string(ns) + " samples cannot determine " +
                              std::to_string(n) + " control points");
    std::vector<Scalar> cparams;
    for (const auto& c : constraints) cparams.push_back(c.param);
    std::vector<Scalar> sorted = cparams;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
        if (!(sorted[i] < sorted[i + 1]))
            throw InvalidArgument("approximation: constraint parameters are not distinct");

    const auto nc = static_cast<Eigen::Index>(constraints.size());
    const auto dim = samples.cols();
    const DenseMatrix<Scalar> nhat = collocation_matrix(sample_params, degree, knots);
    const DenseMatrix<Scalar> ncon = collocation_matrix(cparams, degree, knots);

    DenseMatrix<Scalar> kkt = DenseMatrix<Scalar>::Zero(n + nc, n + nc);
    kkt.topLeftCorner(n, n) = nhat.transpose() * nhat;
    kkt.topRightCorner(n, nc) = ncon.transpose();
    kkt.bottomLeftCorner(nc, n) = ncon;
    DenseMatrix<Scalar> rhs(n + nc, dim);
    rhs.topRows(n) = nhat.transpose() * samples;
    for (Eigen::Index i = 0; i < nc; ++i) {
        const auto& pt = constraints[static_cast<std::size_t>(i)].point;
        if (pt.size() != dim) throw InvalidArgument("approximation: constraint dimension mismatch");
        rhs.row(n + i) = pt;
    }
    const DenseMatrix<Scalar> sol = solve_linear(kkt, rhs);
    PointMatrix<Scalar> ctrl = sol.topRows(n);
    return BSplineCurve<Scalar>(degree, knots, std::move(ctrl));
}

} // namespace cnet
