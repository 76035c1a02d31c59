#pragma once

#include "cnet/bspline_surface.hpp"
#include "cnet/interpolation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cnet {

namespace detail {

/// Swaps the grid axes of a net stored as rows x (cols * dim).
template <typename Scalar>
PointMatrix<Scalar> transpose_net(const PointMatrix<Scalar>& net, Eigen::Index dim)
{
    const Eigen::Index rows = net.rows(), cols = net.cols() / dim;
    PointMatrix<Scalar> t(cols, rows * dim);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) t.row(j).segment(i * dim, dim) = net.row(i).segment(j * dim, dim);
    return t;
}

} // namespace detail

/// Default skinning degree across a family of `count` sections.
inline int default_skin_degree(std::size_t count)
{
    return static_cast<int>(std::min<std::size_t>(3, count - 1));
}

/// Surface through compatible curves: s(., v_k) == curves[k].
///
/// The collocation matrix depends only on the parameters, so all control-point columns
/// are solved against one factorization. `knots_v` defaults to knot averaging of v_params.
template <typename Scalar>
BSplineSurface<Scalar> skin_curves(const std::vector<BSplineCurve<Scalar>>& curves,
                                   const std::vector<Scalar>& v_params, int degree_v,
                                   const std::optional<KnotVector<Scalar>>& knots_v = std::nullopt)
{
    if (curves.size() < 2) throw InvalidArgument("skinning needs at least 2 curves");
    if (v_params.size() != curves.size())
        throw InvalidArgument("skinning: " + std::to_string(curves.size()) + " curves but " +
                              std::to_string(v_params.size()) + " parameters");
    if (degree_v < 1 || static_cast<std::size_t>(degree_v) > curves.size() - 1)
        throw InvalidArgument("skinning degree " + std::to_string(degree_v) + " not in [1, " +
                              std::to_string(curves.size() - 1) + "]");
    const auto& ref = curves.front();
    const Eigen::Index dim = ref.dimension();
    for (std::size_t k = 1; k < curves.size(); ++k) {
        if (curves[k].degree() != ref.degree() || !(curves[k].knots() == ref.knots()) ||
            curves[k].dimension() != dim || curves[k].periodic() != ref.periodic())
            throw InvalidArgument("skinning: curve " + std::to_string(k) +
                                  " is not compatible with curve 0 (degree/knots differ)");
    }
    const Eigen::Index n = ref.num_control_points();
    PointMatrix<Scalar> rows(static_cast<Eigen::Index>(curves.size()), n * dim);
    for (std::size_t k = 0; k < curves.size(); ++k) {
        const auto& P = curves[k].control_points();
        for (Eigen::Index i = 0; i < n; ++i) rows.row(static_cast<Eigen::Index>(k)).segment(i * dim, dim) = P.row(i);
    }
    const KnotVector<Scalar> kv = knots_v ? *knots_v : averaged_knots(v_params, degree_v);
    const auto across = interpolate_with_knots(rows, v_params, degree_v, kv);
    // across: one row per v control point, each holding the n u-control points
    return BSplineSurface<Scalar>(degree_v, ref.degree(), kv, ref.knots(), across.control_points(), dim).transposed();
}

/// Tensor-product interpolation of a point grid: s(u_l, v_k) == grid[l][k].
template <typename Scalar>
BSplineSurface<Scalar> tensor_interpolate(const std::vector<std::vector<PointRow<Scalar>>>& grid,
                                          const std::vector<Scalar>& u_params,
                                          const std::vector<Scalar>& v_params, int degree_u, int degree_v,
                                          const KnotVector<Scalar>& knots_u, const KnotVector<Scalar>& knots_v)
{
    const auto nu = static_cast<Eigen::Index>(grid.size());
    if (static_cast<std::size_t>(nu) != u_params.size())
        throw InvalidArgument("tensor_interpolate: grid has " + std::to_string(nu) + " rows but " +
                              std::to_string(u_params.size()) + " u parameters");
    if (nu == 0) throw InvalidArgument("tensor_interpolate: empty grid");
    const auto nv = static_cast<Eigen::Index>(grid.front().size());
    if (static_cast<std::size_t>(nv) != v_params.size())
        throw InvalidArgument("tensor_interpolate: grid has " + std::to_string(nv) + " columns but " +
                              std::to_string(v_params.size()) + " v parameters");
    if (nv == 0) throw InvalidArgument("tensor_interpolate: empty grid");
    detail::require_strictly_increasing(u_params, "tensor_interpolate (u)");
    detail::require_strictly_increasing(v_params, "tensor_interpolate (v)");
    const Eigen::Index dim = grid.front().front().size();
    PointMatrix<Scalar> data(nu, nv * dim);
    for (Eigen::Index l = 0; l < nu; ++l) {
        const auto& row = grid[static_cast<std::size_t>(l)];
        if (static_cast<Eigen::Index>(row.size()) != nv) throw InvalidArgument("tensor_interpolate: ragged grid");
        for (Eigen::Index k = 0; k < nv; ++k) data.row(l).segment(k * dim, dim) = row[static_cast<std::size_t>(k)];
    }
    const auto along_u = interpolate_with_knots(data, u_params, degree_u, knots_u);
    const auto swapped = detail::transpose_net(along_u.control_points(), dim);
    const auto along_v = interpolate_with_knots(swapped, v_params, degree_v, knots_v);
    return BSplineSurface<Scalar>(degree_v, degree_u, knots_v, knots_u, along_v.control_points(), dim).transposed();
}

} // namespace cnet
