#pragma once

#include "cnet/errors.hpp"
#include "cnet/knot_vector.hpp"
#include "cnet/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cnet {

/// Nonzero basis functions at one parameter: N_{first}, ..., N_{first+degree}.
template <typename Scalar>
struct BasisValues {
    std::size_t first = 0;
    DenseVector<Scalar> values;
};

/// Basis derivatives: row k holds the k-th derivative of N_{first..first+degree}.
template <typename Scalar>
struct BasisDerivatives {
    std::size_t first = 0;
    DenseMatrix<Scalar> values;
};

namespace detail {

/// Relative slack for parameters that land a rounding error outside the domain.
template <typename Scalar>
Scalar domain_slack(Scalar lo, Scalar hi)
{
    using std::abs;
    return Scalar(1e-12) * std::max({Scalar(1), abs(lo), abs(hi), hi - lo});
}

template <typename Scalar>
Scalar clamp_to_domain(Scalar u, int degree, const KnotVector<Scalar>& knots)
{
    const auto [lo, hi] = knots.domain(degree);
    const Scalar slack = domain_slack(lo, hi);
    if (!(u >= lo - slack && u <= hi + slack))
        throw DomainError("parameter " + std::to_string(static_cast<double>(u)) +
                          " outside domain [" + std::to_string(static_cast<double>(lo)) + ", " +
                          std::to_string(static_cast<double>(hi)) + "]");
    return std::clamp(u, lo, hi);
}

template <typename Scalar>
void check_basis_args(int degree, const KnotVector<Scalar>& knots)
{
    if (degree < 0) throw InvalidArgument("negative degree");
    if (knots.num_control_points(degree) < static_cast<std::size_t>(degree) + 1)
        throw InvalidArgument("knot vector of size " + std::to_string(knots.size()) +
                              " too short for degree " + std::to_string(degree));
}

} // namespace detail

/// Cox-de Boor evaluation of the degree+1 basis functions that are nonzero at `u`.
template <typename Scalar>
BasisValues<Scalar> basis_functions(Scalar u, int degree, const KnotVector<Scalar>& knots)
{
    detail::check_basis_args(degree, knots);
    u = detail::clamp_to_domain(u, degree, knots);
    const std::size_t span = knots.find_span(u, degree);
    const int p = degree;

    DenseVector<Scalar> n(p + 1), left(p + 1), right(p + 1);
    n[0] = Scalar(1);
    for (int j = 1; j <= p; ++j) {
        left[j] = u - knots[span + 1 - j];
        right[j] = knots[span + j] - u;
        Scalar saved = 0;
        for (int r = 0; r < j; ++r) {
            const Scalar temp = n[r] / (right[r + 1] + left[j - r]);
            n[r] = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        n[j] = saved;
    }
    return {span - static_cast<std::size_t>(p), std::move(n)};
}

/// Basis functions and their derivatives up to `order` (higher than degree gives zeros).
template <typename Scalar>
BasisDerivatives<Scalar> basis_derivatives(Scalar u, int degree, const KnotVector<Scalar>& knots,
                                           int order)
{
    detail::check_basis_args(degree, knots);
    if (order < 0) throw InvalidArgument("negative derivative order");
    u = detail::clamp_to_domain(u, degree, knots);
    const std::size_t span = knots.find_span(u, degree);
    const int p = degree;

    DenseMatrix<Scalar> ndu(p + 1, p + 1);
    DenseVector<Scalar> left(p + 1), right(p + 1);
    ndu(0, 0) = Scalar(1);
    for (int j = 1; j <= p; ++j) {
        left[j] = u - knots[span + 1 - j];
        right[j] = knots[span + j] - u;
        Scalar saved = 0;
        for (int r = 0; r < j; ++r) {
            ndu(j, r) = right[r + 1] + left[j - r]; // lower triangle: knot differences
            const Scalar temp = ndu(r, j - 1) / ndu(j, r);
            ndu(r, j) = saved + right[r + 1] * temp;
            saved = left[j - r] * temp;
        }
        ndu(j, j) = saved;
    }

    DenseMatrix<Scalar> ders = DenseMatrix<Scalar>::Zero(order + 1, p + 1);
    for (int j = 0; j <= p; ++j) ders(0, j) = ndu(j, p);

    DenseMatrix<Scalar> a(2, p + 1);
    for (int r = 0; r <= p; ++r) {
        int s1 = 0, s2 = 1;
        a(0, 0) = Scalar(1);
        for (int k = 1; k <= std::min(order, p); ++k) {
            Scalar d = 0;
            const int rk = r - k, pk = p - k;
            if (r >= k) {
                a(s2, 0) = a(s1, 0) / ndu(pk + 1, rk);
                d = a(s2, 0) * ndu(rk, pk);
            }
            const int j1 = rk >= -1 ? 1 : -rk;
            const int j2 = (r - 1 <= pk) ? k - 1 : p - r;
            for (int j = j1; j <= j2; ++j) {
                a(s2, j) = (a(s1, j) - a(s1, j - 1)) / ndu(pk + 1, rk + j);
                d += a(s2, j) * ndu(rk + j, pk);
            }
            if (r <= pk) {
                a(s2, k) = -a(s1, k - 1) / ndu(pk + 1, r);
                d += a(s2, k) * ndu(r, pk);
            }
            ders(k, r) = d;
            std::swap(s1, s2);
        }
    }
    Scalar factor = Scalar(p);
    for (int k = 1; k <= std::min(order, p); ++k) {
        ders.row(k) *= factor;
        factor *= Scalar(p - k);
    }
    return {span - static_cast<std::size_t>(p), std::move(ders)};
}

} // namespace cnet
