#pragma once

#include "cnet/basis.hpp"
#include "cnet/errors.hpp"
#include "cnet/knot_vector.hpp"
#include "cnet/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace cnet {

/// Polynomial B-spline curve of arbitrary dimension (one control point per row).
///
/// Dimension 1 is used for scalar reparametrization functions; dimension 3 for geometry.
/// Wider rows carry whole surface control-net columns, which lets surface refinement
/// reuse the curve algorithms unchanged.
template <typename Scalar>
class BSplineCurve {
public:
    using Points = PointMatrix<Scalar>;
    using Point = PointRow<Scalar>;

    BSplineCurve() = default;

    BSplineCurve(int degree, KnotVector<Scalar> knots, Points control_points, bool periodic = false)
        : degree_(degree), knots_(std::move(knots)), ctrl_(std::move(control_points)),
          periodic_(periodic)
    {
        validate();
    }

    [[nodiscard]] int degree() const noexcept { return degree_; }
    [[nodiscard]] const KnotVector<Scalar>& knots() const noexcept { return knots_; }
    [[nodiscard]] const Points& control_points() const noexcept { return ctrl_; }
    [[nodiscard]] Eigen::Index num_control_points() const noexcept { return ctrl_.rows(); }
    [[nodiscard]] Eigen::Index dimension() const noexcept { return ctrl_.cols(); }
    [[nodiscard]] bool periodic() const noexcept { return periodic_; }
    [[nodiscard]] std::pair<Scalar, Scalar> domain() const { return knots_.domain(degree_); }

    [[nodiscard]] Point evaluate(Scalar u) const
    {
        const auto basis = basis_functions(wrap(u), degree_, knots_);
        Point p = Point::Zero(dimension());
        for (int j = 0; j <= degree_; ++j)
            p += basis.values[j] * ctrl_.row(static_cast<Eigen::Index>(basis.first) + j);
        return p;
    }

    /// Derivatives of order 0..order at u, one per row.
    [[nodiscard]] Points derivatives(Scalar u, int order) const
    {
        const auto basis = basis_derivatives(wrap(u), degree_, knots_, order);
        Points out = Points::Zero(order + 1, dimension());
        for (int k = 0; k <= order; ++k)
            for (int j = 0; j <= degree_; ++j)
                out.row(k) +=
                    basis.values(k, j) * ctrl_.row(static_cast<Eigen::Index>(basis.first) + j);
        return out;
    }

    [[nodiscard]] Point derivative(Scalar u, int order) const
    {
        if (order < 1) throw InvalidArgument("derivative order must be >= 1");
        return derivatives(u, order).row(order);
    }

    friend bool operator==(const BSplineCurve& a, const BSplineCurve& b)
    {
        return a.degree_ == b.degree_ && a.periodic_ == b.periodic_ && a.knots_ == b.knots_ &&
               a.ctrl_.rows() == b.ctrl_.rows() && a.ctrl_.cols() == b.ctrl_.cols() &&
               a.ctrl_ == b.ctrl_;
    }

private:
    Scalar wrap(Scalar u) const
    {
        if (!periodic_) return u;
        const auto [lo, hi] = domain();
        const Scalar period = hi - lo;
        using std::floor;
        if (u >= lo && u <= hi) return u;
        return u - period * floor((u - lo) / period);
    }

    void validate() const
    {
        if (degree_ < 0) throw InvalidArgument("curve degree must be nonnegative");
        const auto n = static_cast<std::size_t>(ctrl_.rows());
        const auto d = static_cast<std::size_t>(degree_);
        if (n < d + 1)
            throw InvalidArgument("curve of degree " + std::to_string(degree_) + " needs at least " +
                                  std::to_string(d + 1) + " control points, got " +
                                  std::to_string(n));
        if (knots_.size() != n + d + 1)
            throw InvalidArgument("knot count " + std::to_string(knots_.size()) +
                                  " inconsistent with " + std::to_string(n) +
                                  " control points of degree " + std::to_string(degree_) +
                                  " (expected " + std::to_string(n + d + 1) + ")");
        const auto [lo, hi] = domain();
        if (!(lo < hi)) throw InvalidArgument("curve parameter domain is empty");
        const auto groups = knots_.unique_with_multiplicity();
        for (std::size_t i = 0; i < groups.size(); ++i) {
            const bool end = i == 0 || i + 1 == groups.size();
            const int limit = end ? degree_ + 1 : degree_;
            if (groups[i].second > limit && !(degree_ == 0 && !end))
                throw InvalidArgument("knot " + std::to_string(static_cast<double>(groups[i].first)) +
                                      " has multiplicity " + std::to_string(groups[i].second) +
                                      " above the allowed " + std::to_string(limit));
        }
    }

    int degree_ = 0;
    KnotVector<Scalar> knots_;
    Points ctrl_;
    bool periodic_ = false;
};

using Curve = BSplineCurve<double>;

template <typename Scalar>
PointRow<Scalar> evaluate_curve(const BSplineCurve<Scalar>& c, Scalar u)
{
    return c.evaluate(u);
}

template <typename Scalar>
PointRow<Scalar> curve_derivative(const BSplineCurve<Scalar>& c, Scalar u, int order)
{
    return c.derivative(u, order);
}

/// Same curve with its knot vector mapped affinely so the domain becomes [a, b].
template <typename Scalar>
BSplineCurve<Scalar> with_domain(const BSplineCurve<Scalar>& c, Scalar a, Scalar b)
{
    return BSplineCurve<Scalar>(c.degree(), c.knots().rescaled(c.degree(), a, b),
                                c.control_points(), c.periodic());
}

namespace detail {

/// Boehm insertion of `u` r times; u must lie inside the domain. No validation.
template <typename Scalar>
BSplineCurve<Scalar> insert_knot_raw(const BSplineCurve<Scalar>& c, Scalar u, int r)
{
    using Points = PointMatrix<Scalar>;
    const int p = c.degree();
    const auto& kv = c.knots();
    const auto& P = c.control_points();
    const Eigen::Index np = P.rows();
    const std::size_t k = kv.find_span(u, p);
    const int s = kv.multiplicity(u);
    const auto ki = static_cast<Eigen::Index>(k);

    std::vector<Scalar> uq;
    uq.reserve(kv.size() + static_cast<std::size_t>(r));
    for (std::size_t i = 0; i <= k; ++i) uq.push_back(kv[i]);
    for (int i = 0; i < r; ++i) uq.push_back(u);
    for (std::size_t i = k + 1; i < kv.size(); ++i) uq.push_back(kv[i]);

    Points Q(np + r, P.cols());
    for (Eigen::Index i = 0; i <= ki - p; ++i) Q.row(i) = P.row(i);
    for (Eigen::Index i = ki - s; i < np; ++i) Q.row(i + r) = P.row(i);
    Points R(p - s + 1, P.cols());
    for (int i = 0; i <= p - s; ++i) R.row(i) = P.row(ki - p + i);

    Eigen::Index L = 0;
    for (int j = 1; j <= r; ++j) {
        L = ki - p + j;
        for (int i = 0; i <= p - j - s; ++i) {
            const Scalar alpha = (u - kv[static_cast<std::size_t>(L + i)]) /
                                 (kv[k + 1 + static_cast<std::size_t>(i)] -
                                  kv[static_cast<std::size_t>(L + i)]);
            R.row(i) = alpha * R.row(i + 1) + (Scalar(1) - alpha) * R.row(i);
        }
        Q.row(L) = R.row(0);
        Q.row(ki + r - j - s) = R.row(p - j - s);
    }
    for (Eigen::Index i = L + 1; i < ki - s; ++i) Q.row(i) = R.row(i - L);
    return BSplineCurve<Scalar>(p, KnotVector<Scalar>(std::move(uq)), std::move(Q), false);
}

} // namespace detail

/// Converts a periodic or otherwise unclamped curve to an equivalent clamped one
/// over the same domain.
template <typename Scalar>
BSplineCurve<Scalar> to_clamped(const BSplineCurve<Scalar>& c)
{
    const int p = c.degree();
    if (c.knots().is_clamped(p) && !c.periodic()) return c;
    const auto [lo, hi] = c.domain();
    BSplineCurve<Scalar> work(p, c.knots(), c.control_points(), false);
    const int s_lo = work.knots().multiplicity(lo);
    if (work.knots()[0] != lo && s_lo < p) work = detail::insert_knot_raw(work, lo, p - s_lo);
    const auto last_before = work.knots()[work.knots().size() - 1];
    const int s_hi = work.knots().multiplicity(hi);
    if (last_before != hi && s_hi < p) work = detail::insert_knot_raw(work, hi, p - s_hi);

    const auto& kv = work.knots().values();
    std::size_t j = 0;
    while (kv[j] != lo) ++j;
    std::size_t k = kv.size() - 1;
    while (kv[k] != hi) --k;
    // keep knots [j, k] and pad with one more copy of each end
    std::vector<Scalar> knots;
    const std::size_t left_pad = (j == 0) ? 0 : 1;
    const std::size_t right_pad = (k == kv.size() - 1) ? 0 : 1;
    if (left_pad) knots.push_back(lo);
    for (std::size_t i = j; i <= k; ++i) knots.push_back(kv[i]);
    if (right_pad) knots.push_back(hi);
    const auto first_ctrl = static_cast<Eigen::Index>(j) - static_cast<Eigen::Index>(left_pad);
    const auto count = static_cast<Eigen::Index>(knots.size()) - p - 1;
    PointMatrix<Scalar> ctrl = work.control_points().middleRows(first_ctrl, count);
    return BSplineCurve<Scalar>(p, KnotVector<Scalar>(std::move(knots)), std::move(ctrl), false);
}

/// Inserts `u` into the knot vector `multiplicity` times without changing the geometry.
/// Periodic curves come back in clamped form.
template <typename Scalar>
BSplineCurve<Scalar> insert_knot(const BSplineCurve<Scalar>& curve, Scalar u, int multiplicity = 1)
{
    if (multiplicity < 0) throw InvalidArgument("insert_knot: negative multiplicity");
    const auto [lo, hi] = curve.domain();
    if (!(u > lo && u < hi))
        throw DomainError("insert_knot: parameter " + std::to_string(static_cast<double>(u)) +
                          " not strictly inside the domain");
    const BSplineCurve<Scalar> c = curve.periodic() ? to_clamped(curve) : curve;
    if (multiplicity == 0) return c;
    const int s = c.knots().multiplicity(u);
    if (s + multiplicity > c.degree())
        throw InvalidArgument("insert_knot: multiplicity " + std::to_string(s + multiplicity) +
                              " would exceed degree " + std::to_string(c.degree()));
    return detail::insert_knot_raw(c, u, multiplicity);
}

namespace detail {

template <typename Scalar>
Scalar binomial(int n, int k)
{
    if (k < 0 || k > n) return Scalar(0);
    Scalar b = 1;
    for (int i = 1; i <= k; ++i) b = b * Scalar(n - k + i) / Scalar(i);
    return b;
}

} // namespace detail

/// Raises the degree to `target_degree`, keeping the curve geometrically identical.
///
/// Bezier-segment based elevation with knot removal (Piegl-Tiller A5.9). Unclamped and
/// periodic inputs are clamped first.
template <typename Scalar>
BSplineCurve<Scalar> elevate_degree(const BSplineCurve<Scalar>& curve, int target_degree)
{
    const int p = curve.degree();
    if (target_degree < p)
        throw InvalidArgument("elevate_degree: target degree " + std::to_string(target_degree) +
                              " below current degree " + std::to_string(p));
    if (target_degree == p) return curve;
    const BSplineCurve<Scalar> c = to_clamped(curve);
    using Points = PointMatrix<Scalar>;
    using Row = PointRow<Scalar>;

    const int t = target_degree - p;
    const auto& U = c.knots().values();
    const Points& Pw = c.control_points();
    const Eigen::Index dim = Pw.cols();
    const int n = static_cast<int>(Pw.rows()) - 1;
    const int m = n + p + 1;
    const int ph = p + t;
    const int ph2 = ph / 2;

    DenseMatrix<Scalar> bezalfs = DenseMatrix<Scalar>::Zero(ph + 1, p + 1);
    bezalfs(0, 0) = bezalfs(ph, p) = Scalar(1);
    for (int i = 1; i <= ph2; ++i) {
        const Scalar inv = Scalar(1) / detail::binomial<Scalar>(ph, i);
        const int mpi = std::min(p, i);
        for (int j = std::max(0, i - t); j <= mpi; ++j)
            bezalfs(i, j) = inv * detail::binomial<Scalar>(p, j) * detail::binomial<Scalar>(t, i - j);
    }
    for (int i = ph2 + 1; i <= ph - 1; ++i) {
        const int mpi = std::min(p, i);
        for (int j = std::max(0, i - t); j <= mpi; ++j) bezalfs(i, j) = bezalfs(ph - i, p - j);
    }

    // Upper bounds on output sizes: every distinct interior knot gains t copies.
    const auto groups = c.knots().unique_with_multiplicity();
    const std::size_t max_knots = U.size() + static_cast<std::size_t>(t) * groups.size();
    std::vector<Scalar> Uh(max_knots, Scalar(0));
    Points Qw = Points::Zero(static_cast<Eigen::Index>(max_knots), dim);
    Points bpts(p + 1, dim), ebpts(ph + 1, dim), Nextbpts(std::max(p - 1, 1), dim);
    std::vector<Scalar> alfs(static_cast<std::size_t>(std::max(p - 1, 1)));

    int mh = ph, kind = ph + 1;
    int r = -1, a = p, b = p + 1, cind = 1;
    Scalar ua = U[0];
    Qw.row(0) = Pw.row(0);
    for (int i = 0; i <= ph; ++i) Uh[i] = ua;
    for (int i = 0; i <= p; ++i) bpts.row(i) = Pw.row(i);

    while (b < m) {
        int i = b;
        while (b < m && U[b] == U[b + 1]) ++b;
        const int mul = b - i + 1;
        mh = mh + mul + t;
        const Scalar ub = U[b];
        const int oldr = r;
        r = p - mul;
        const int lbz = oldr > 0 ? (oldr + 2) / 2 : 1;
        const int rbz = r > 0 ? ph - (r + 1) / 2 : ph;
        if (r > 0) {
            const Scalar numer = ub - ua;
            for (int k = p; k > mul; --k) alfs[k - mul - 1] = numer / (U[a + k] - ua);
            for (int j = 1; j <= r; ++j) {
                const int save = r - j;
                const int s = mul + j;
                for (int k = p; k >= s; --k)
                    bpts.row(k) = alfs[k - s] * bpts.row(k) + (Scalar(1) - alfs[k - s]) * bpts.row(k - 1);
                Nextbpts.row(save) = bpts.row(p);
            }
        }
        for (i = lbz; i <= ph; ++i) {
            ebpts.row(i) = Row::Zero(dim);
            const int mpi = std::min(p, i);
            for (int j = std::max(0, i - t); j <= mpi; ++j) ebpts.row(i) += bezalfs(i, j) * bpts.row(j);
        }
        if (oldr > 1) {
            int first = kind - 2, last = kind;
            const Scalar den = ub - ua;
            const Scalar bet = (ub - Uh[kind - 1]) / den;
            for (int tr = 1; tr < oldr; ++tr) {
                i = first;
                int j = last;
                int kj = j - kind + 1;
                while (j - i > tr) {
                    if (i < cind) {
                        const Scalar alf = (ub - Uh[i]) / (ua - Uh[i]);
                        Qw.row(i) = alf * Qw.row(i) + (Scalar(1) - alf) * Qw.row(i - 1);
                    }
                    if (j >= lbz) {
                        if (j - tr <= kind - ph + oldr) {
                            const Scalar gam = (ub - Uh[j - tr]) / den;
                            ebpts.row(kj) = gam * ebpts.row(kj) + (Scalar(1) - gam) * ebpts.row(kj + 1);
                        } else {
                            ebpts.row(kj) = bet * ebpts.row(kj) + (Scalar(1) - bet) * ebpts.row(kj + 1);
                        }
                    }
                    ++i;
                    --j;
                    --kj;
                }
                --first;
                ++last;
            }
        }
        if (a != p)
            for (i = 0; i < ph - oldr; ++i) Uh[kind++] = ua;
        for (int j = lbz; j <= rbz; ++j) Qw.row(cind++) = ebpts.row(j);
        if (b < m) {
            for (int j = 0; j < r; ++j) bpts.row(j) = Nextbpts.row(j);
            for (int j = r; j <= p; ++j) bpts.row(j) = Pw.row(b - p + j);
            a = b;
            ++b;
            ua = ub;
        } else {
            for (i = 0; i <= ph; ++i) Uh[kind + i] = ub;
        }
    }
    const int nh = mh - ph - 1;
    Uh.resize(static_cast<std::size_t>(mh + 1));
    Points Q = Qw.topRows(nh + 1);
    return BSplineCurve<Scalar>(ph, KnotVector<Scalar>(std::move(Uh)), std::move(Q), false);
}

} // namespace cnet
