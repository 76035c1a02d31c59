#pragma once

#include "cnet/basis.hpp"
#include "cnet/bspline_curve.hpp"
#include "cnet/curve_ops.hpp"
#include "cnet/errors.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cnet {

/// Tensor-product B-spline surface.
///
/// The control net is stored row-major as an n_u x (n_v * dim) matrix: row i holds
/// P_{i,0}, ..., P_{i,n_v-1}. Read as a curve in u, each row is one wide control point,
/// which is how u-direction refinement is implemented; v-direction work goes through
/// transposed().
template <typename Scalar>
class BSplineSurface {
public:
    using Net = PointMatrix<Scalar>;
    using Point = PointRow<Scalar>;

    BSplineSurface() = default;

    BSplineSurface(int degree_u, int degree_v, KnotVector<Scalar> knots_u, KnotVector<Scalar> knots_v,
                   Net net, Eigen::Index dim = 3)
        : degree_u_(degree_u), degree_v_(degree_v), knots_u_(std::move(knots_u)),
          knots_v_(std::move(knots_v)), net_(std::move(net)), dim_(dim)
    {
        const auto nu = knots_u_.num_control_points(degree_u_);
        const auto nv = knots_v_.num_control_points(degree_v_);
        if (dim_ < 1 || net_.cols() % dim_ != 0)
            throw InvalidArgument("surface control net width is not a multiple of the dimension");
        if (static_cast<std::size_t>(net_.rows()) != nu ||
            static_cast<std::size_t>(net_.cols() / dim_) != nv)
            throw InvalidArgument("surface control grid " + std::to_string(net_.rows()) + "x" +
                                  std::to_string(net_.cols() / dim_) +
                                  " inconsistent with knot vectors (expected " + std::to_string(nu) +
                                  "x" + std::to_string(nv) + ")");
        if (nu < static_cast<std::size_t>(degree_u_) + 1 || nv < static_cast<std::size_t>(degree_v_) + 1)
            throw InvalidArgument("surface control grid too small for its degrees");
    }

    /// Builds a surface from an n_u x n_v grid of points.
    static BSplineSurface from_grid(int degree_u, int degree_v, KnotVector<Scalar> knots_u,
                                    KnotVector<Scalar> knots_v,
                                    const std::vector<std::vector<Point>>& grid)
    {
        const auto nu = static_cast<Eigen::Index>(grid.size());
        const auto nv = nu ? static_cast<Eigen::Index>(grid.front().size()) : 0;
        const auto dim = nv ? grid.front().front().size() : 3;
        Net net(nu, nv * dim);
        for (Eigen::Index i = 0; i < nu; ++i) {
            if (static_cast<Eigen::Index>(grid[static_cast<std::size_t>(i)].size()) != nv)
                throw InvalidArgument("ragged control grid");
            for (Eigen::Index j = 0; j < nv; ++j)
                net.row(i).segment(j * dim, dim) = grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
        return BSplineSurface(degree_u, degree_v, std::move(knots_u), std::move(knots_v), std::move(net), dim);
    }

    [[nodiscard]] int degree_u() const noexcept { return degree_u_; }
    [[nodiscard]] int degree_v() const noexcept { return degree_v_; }
    [[nodiscard]] const KnotVector<Scalar>& knots_u() const noexcept { return knots_u_; }
    [[nodiscard]] const KnotVector<Scalar>& knots_v() const noexcept { return knots_v_; }
    [[nodiscard]] const Net& net() const noexcept { return net_; }
    [[nodiscard]] Eigen::Index dimension() const noexcept { return dim_; }
    [[nodiscard]] Eigen::Index rows() const noexcept { return net_.rows(); }
    [[nodiscard]] Eigen::Index cols() const noexcept { return net_.cols() / dim_; }
    [[nodiscard]] std::pair<Scalar, Scalar> domain_u() const { return knots_u_.domain(degree_u_); }
    [[nodiscard]] std::pair<Scalar, Scalar> domain_v() const { return knots_v_.domain(degree_v_); }

    [[nodiscard]] Point control_point(Eigen::Index i, Eigen::Index j) const
    {
        return net_.row(i).segment(j * dim_, dim_);
    }

    [[nodiscard]] Point evaluate(Scalar u, Scalar v) const
    {
        const auto bu = basis_functions(u, degree_u_, knots_u_);
        const auto bv = basis_functions(v, degree_v_, knots_v_);
        Point p = Point::Zero(dim_);
        for (int a = 0; a <= degree_u_; ++a) {
            const auto i = static_cast<Eigen::Index>(bu.first) + a;
            for (int b = 0; b <= degree_v_; ++b) {
                const auto j = static_cast<Eigen::Index>(bv.first) + b;
                p += bu.values[a] * bv.values[b] * net_.row(i).segment(j * dim_, dim_);
            }
        }
        return p;
    }

    /// The net as a curve in u whose control points are whole rows.
    [[nodiscard]] BSplineCurve<Scalar> as_u_curve() const
    {
        return BSplineCurve<Scalar>(degree_u_, knots_u_, net_);
    }

    static BSplineSurface from_u_curve(const BSplineCurve<Scalar>& c, int degree_v,
                                       KnotVector<Scalar> knots_v, Eigen::Index dim)
    {
        return BSplineSurface(c.degree(), degree_v, c.knots(), std::move(knots_v), c.control_points(), dim);
    }

    /// Same surface with u and v swapped.
    [[nodiscard]] BSplineSurface transposed() const
    {
        const Eigen::Index nu = rows(), nv = cols();
        Net t(nv, nu * dim_);
        for (Eigen::Index i = 0; i < nu; ++i)
            for (Eigen::Index j = 0; j < nv; ++j) t.row(j).segment(i * dim_, dim_) = net_.row(i).segment(j * dim_, dim_);
        return BSplineSurface(degree_v_, degree_u_, knots_v_, knots_u_, std::move(t), dim_);
    }

    /// Curve s(., v) for fixed v.
    [[nodiscard]] BSplineCurve<Scalar> isocurve_u(Scalar v) const
    {
        const auto bv = basis_functions(v, degree_v_, knots_v_);
        PointMatrix<Scalar> ctrl = PointMatrix<Scalar>::Zero(rows(), dim_);
        for (int b = 0; b <= degree_v_; ++b) {
            const auto j = static_cast<Eigen::Index>(bv.first) + b;
            ctrl += bv.values[b] * net_.middleCols(j * dim_, dim_);
        }
        return BSplineCurve<Scalar>(degree_u_, knots_u_, std::move(ctrl));
    }

    /// Curve s(u, .) for fixed u.
    [[nodiscard]] BSplineCurve<Scalar> isocurve_v(Scalar u) const { return transposed().isocurve_u(u); }

    friend bool operator==(const BSplineSurface& a, const BSplineSurface& b)
    {
        return a.degree_u_ == b.degree_u_ && a.degree_v_ == b.degree_v_ && a.knots_u_ == b.knots_u_ &&
               a.knots_v_ == b.knots_v_ && a.dim_ == b.dim_ && a.net_.rows() == b.net_.rows() &&
               a.net_.cols() == b.net_.cols() && a.net_ == b.net_;
    }

private:
    int degree_u_ = 0;
    int degree_v_ = 0;
    KnotVector<Scalar> knots_u_;
    KnotVector<Scalar> knots_v_;
    Net net_;
    Eigen::Index dim_ = 3;
};

using Surface = BSplineSurface<double>;

template <typename Scalar>
PointRow<Scalar> evaluate_surface(const BSplineSurface<Scalar>& s, Scalar u, Scalar v)
{
    return s.evaluate(u, v);
}

template <typename Scalar>
BSplineSurface<Scalar> elevate_degree_u(const BSplineSurface<Scalar>& s, int target)
{
    const auto c = elevate_degree(s.as_u_curve(), target);
    return BSplineSurface<Scalar>::from_u_curve(c, s.degree_v(), s.knots_v(), s.dimension());
}

template <typename Scalar>
BSplineSurface<Scalar> elevate_degree_v(const BSplineSurface<Scalar>& s, int target)
{
    return elevate_degree_u(s.transposed(), target).transposed();
}

template <typename Scalar>
BSplineSurface<Scalar> insert_knot_u(const BSplineSurface<Scalar>& s, Scalar u, int multiplicity = 1)
{
    const auto c = insert_knot(s.as_u_curve(), u, multiplicity);
    return BSplineSurface<Scalar>::from_u_curve(c, s.degree_v(), s.knots_v(), s.dimension());
}

template <typename Scalar>
BSplineSurface<Scalar> insert_knot_v(const BSplineSurface<Scalar>& s, Scalar v, int multiplicity = 1)
{
    return insert_knot_u(s.transposed(), v, multiplicity).transposed();
}

namespace detail {

template <typename Scalar>
std::vector<BSplineSurface<Scalar>> compatible_in_u(const std::vector<BSplineSurface<Scalar>>& surfaces)
{
    std::vector<BSplineCurve<Scalar>> curves;
    for (const auto& s : surfaces) curves.push_back(s.as_u_curve());
    // curves of different widths cannot share one call; elevate/refine each against the merged knots
    int degree = 0;
    for (const auto& c : curves) degree = std::max(degree, c.degree());
    std::vector<KnotVector<Scalar>> kvs;
    for (auto& c : curves) {
        c = elevate_degree(to_clamped(c), degree);
        kvs.push_back(c.knots());
    }
    const auto [lo, hi] = curves.front().domain();
    const Scalar tol = Scalar(kKnotMergeTolerance) * std::max(Scalar(1), hi - lo);
    for (const auto& c : curves) {
        using std::abs;
        const auto [a, b] = c.domain();
        if (abs(a - lo) > tol || abs(b - hi) > tol)
            throw InvalidArgument("surfaces do not share a parameter domain");
    }
    const auto merged = merged_interior_knots(kvs, tol);
    std::vector<BSplineSurface<Scalar>> out;
    KnotVector<Scalar> canonical;
    for (std::size_t i = 0; i < curves.size(); ++i) {
        auto c = refine_to(curves[i], merged, tol);
        if (i == 0) {
            auto k = c.knots().values();
            for (std::size_t e = 0; e <= static_cast<std::size_t>(degree); ++e) {
                k[e] = lo;
                k[k.size() - 1 - e] = hi;
            }
            canonical = KnotVector<Scalar>(std::move(k));
        }
        if (c.knots().size() != canonical.size())
            throw NumericError("surface knot merge produced unequal vectors");
        c = snap_knots(c, canonical);
        out.push_back(BSplineSurface<Scalar>::from_u_curve(c, surfaces[i].degree_v(), surfaces[i].knots_v(),
                                                           surfaces[i].dimension()));
    }
    return out;
}

} // namespace detail

/// Elevates and refines surfaces in both directions until they share degrees and knots.
template <typename Scalar>
std::vector<BSplineSurface<Scalar>> make_surfaces_compatible(const std::vector<BSplineSurface<Scalar>>& surfaces)
{
    if (surfaces.empty()) return {};
    auto in_u = detail::compatible_in_u(surfaces);
    std::vector<BSplineSurface<Scalar>> t;
    for (const auto& s : in_u) t.push_back(s.transposed());
    auto in_v = detail::compatible_in_u(t);
    std::vector<BSplineSurface<Scalar>> out;
    for (const auto& s : in_v) out.push_back(s.transposed());
    return out;
}

} // namespace cnet
