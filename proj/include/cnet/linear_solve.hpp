#pragma once

#include "cnet/errors.hpp"
#include "cnet/types.hpp"

#include <cmath>
#include <string>

namespace cnet {

inline constexpr double kDefaultPivotTolerance = 1e-13;

/// Solves A X = B by LU with partial pivoting. B may carry several right-hand sides.
///
/// A pivot is treated as singular when it falls below `pivot_tol` times the largest
/// magnitude in its original row; the thrown NumericError carries that elimination step.
template <typename DerivedA, typename DerivedB, typename Scalar = typename DerivedA::Scalar>
DenseMatrix<Scalar> solve_linear(const Eigen::MatrixBase<DerivedA>& a,
                                 const Eigen::MatrixBase<DerivedB>& b,
                                 double pivot_tol = kDefaultPivotTolerance)
{
    const Eigen::Index n = a.rows();
    if (a.cols() != n)
        throw InvalidArgument("solve_linear: matrix is " + std::to_string(n) + "x" +
                              std::to_string(a.cols()) + ", expected square");
    if (b.rows() != n)
        throw InvalidArgument("solve_linear: right-hand side has " + std::to_string(b.rows()) +
                              " rows, expected " + std::to_string(n));
    if (n == 0)
        return DenseMatrix<Scalar>(0, b.cols());

    const DenseMatrix<Scalar> dense = a;
    const Eigen::PartialPivLU<DenseMatrix<Scalar>> lu(dense);

    // P A = L U: row k of U was eliminated from original row perm[k].
    const auto& perm = lu.permutationP();
    Eigen::VectorXi original_row(n);
    for (Eigen::Index i = 0; i < n; ++i)
        original_row[perm.indices()[i]] = static_cast<int>(i);

    const auto& packed = lu.matrixLU();
    for (Eigen::Index k = 0; k < n; ++k) {
        using std::abs;
        const Scalar row_scale = dense.row(original_row[k]).cwiseAbs().maxCoeff();
        const Scalar pivot = abs(packed(k, k));
        if (!(row_scale > Scalar(0)) || !(pivot > Scalar(pivot_tol) * row_scale))
            throw NumericError("solve_linear: matrix is numerically singular at pivot " +
                                   std::to_string(k),
                               static_cast<long>(k));
    }
    return lu.solve(DenseMatrix<Scalar>(b));
}

} // namespace cnet
