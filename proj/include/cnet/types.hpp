#pragma once

#include <Eigen/Dense>

namespace cnet {

/// Control points and point lists: one point per row, any dimension.
template <typename Scalar>
using PointMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Scalar>
using PointRow = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using Point3 = Eigen::RowVector3d;

} // namespace cnet
