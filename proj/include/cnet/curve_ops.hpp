#pragma once

#include "cnet/bspline_curve.hpp"
#include "cnet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

namespace cnet {

/// Relative tolerance under which two knot values are treated as the same knot.
inline constexpr double kKnotMergeTolerance = 1e-12;

namespace detail {

/// Interior knots of all inputs merged with the maximum multiplicity seen for each value.
template <typename Scalar>
std::vector<std::pair<Scalar, int>> merged_interior_knots(const std::vector<KnotVector<Scalar>>& kvs,
                                                          Scalar tol)
{
    std::vector<std::pair<Scalar, int>> merged;
    for (const auto& kv : kvs) {
        const auto groups = kv.unique_with_multiplicity();
        for (std::size_t g = 1; g + 1 < groups.size(); ++g) {
            const auto [value, mult] = groups[g];
            auto it = std::find_if(merged.begin(), merged.end(), [&](const auto& e) {
                using std::abs;
                return abs(e.first - value) <= tol;
            });
            if (it == merged.end())
                merged.emplace_back(value, mult);
            else
                it->second = std::max(it->second, mult);
        }
    }
    std::sort(merged.begin(), merged.end());
    return merged;
}

/// Raises the multiplicity of every merged knot in `c` to the merged value.
template <typename Scalar>
BSplineCurve<Scalar> refine_to(const BSplineCurve<Scalar>& c,
                               const std::vector<std::pair<Scalar, int>>& merged, Scalar tol)
{
    BSplineCurve<Scalar> out = c;
    for (const auto& [value, mult] : merged) {
        using std::abs;
        Scalar at = value;
        int have = 0;
        for (const Scalar k : out.knots()) {
            if (abs(k - value) <= tol) {
                at = k;
                ++have;
            }
        }
        if (have < mult) out = detail::insert_knot_raw(out, at, mult - have);
    }
    return out;
}

/// Replaces knot values that differ from `canonical` only by merge tolerance.
template <typename Scalar>
BSplineCurve<Scalar> snap_knots(const BSplineCurve<Scalar>& c, const KnotVector<Scalar>& canonical)
{
    if (c.knots() == canonical) return c;
    return BSplineCurve<Scalar>(c.degree(), canonical, c.control_points(), false);
}

} // namespace detail

/// Brings curves over a common domain to one degree (the maximum) and one knot vector
/// (the union of all knots, each at its maximum multiplicity). Geometry is unchanged.
template <typename Scalar>
std::vector<BSplineCurve<Scalar>> make_curves_compatible(const std::vector<BSplineCurve<Scalar>>& curves)
{
    if (curves.empty()) return {};
    const auto [lo, hi] = curves.front().domain();
    const Scalar tol = Scalar(kKnotMergeTolerance) * std::max(Scalar(1), hi - lo);
    int degree = 0;
    for (std::size_t i = 0; i < curves.size(); ++i) {
        using std::abs;
        const auto [a, b] = curves[i].domain();
        if (abs(a - lo) > tol || abs(b - hi) > tol)
            throw InvalidArgument("make_curves_compatible: curve " + std::to_string(i) +
                                  " has a different parameter domain");
        if (curves[i].dimension() != curves.front().dimension())
            throw InvalidArgument("make_curves_compatible: curve " + std::to_string(i) +
                                  " has a different dimension");
        degree = std::max(degree, curves[i].degree());
    }

    std::vector<BSplineCurve<Scalar>> work;
    std::vector<KnotVector<Scalar>> kvs;
    work.reserve(curves.size());
    for (const auto& c : curves) {
        work.push_back(elevate_degree(to_clamped(c), degree));
        kvs.push_back(work.back().knots());
    }
    const auto merged = detail::merged_interior_knots(kvs, tol);

    std::vector<BSplineCurve<Scalar>> out;
    out.reserve(work.size());
    for (const auto& c : work) out.push_back(detail::refine_to(c, merged, tol));

    // End knots may differ by rounding; take the first curve's vector as canonical.
    std::vector<Scalar> canonical = out.front().knots().values();
    for (std::size_t i = 0; i <= static_cast<std::size_t>(degree); ++i) {
        canonical[i] = lo;
        canonical[canonical.size() - 1 - i] = hi;
    }
    const KnotVector<Scalar> kv(std::move(canonical));
    for (auto& c : out) {
        if (c.knots().size() != kv.size())
            throw NumericError("make_curves_compatible: knot merge produced unequal vectors");
        c = detail::snap_knots(c, kv);
    }
    return out;
}

/// Joins clamped curves end to end into one clamped curve over [0,1].
///
/// Part i occupies a parameter interval proportional to `weights[i]`. Junctions become
/// knots of multiplicity equal to the degree, so the result is C0 there and keeps
/// whatever tangent agreement the parts had.
template <typename Scalar>
BSplineCurve<Scalar> concatenate(const std::vector<BSplineCurve<Scalar>>& parts,
                                 const std::vector<Scalar>& weights, Scalar junction_tol = Scalar(1e-9))
{
    if (parts.empty()) throw InvalidArgument("concatenate: no curves");
    if (weights.size() != parts.size()) throw InvalidArgument("concatenate: one weight per curve");
    if (parts.size() == 1) return with_domain(to_clamped(parts.front()), Scalar(0), Scalar(1));

    int degree = 0;
    for (const auto& c : parts) degree = std::max(degree, c.degree());
    Scalar total = 0;
    for (const Scalar w : weights) {
        if (!(w > Scalar(0))) throw InvalidArgument("concatenate: weights must be positive");
        total += w;
    }

    std::vector<Scalar> knots(static_cast<std::size_t>(degree) + 1, Scalar(0));
    std::vector<PointRow<Scalar>> ctrl;
    Scalar start = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const Scalar end = (i + 1 == parts.size()) ? Scalar(1) : start + weights[i] / total;
        const auto c = with_domain(elevate_degree(to_clamped(parts[i]), degree), start, end);
        const auto& P = c.control_points();
        if (i > 0) {
            const auto gap = (ctrl.back() - P.row(0)).norm();
            if (gap > junction_tol)
                throw InvalidArgument("concatenate: curve " + std::to_string(i) +
                                      " does not start where curve " + std::to_string(i - 1) +
                                      " ends (gap " + std::to_string(static_cast<double>(gap)) + ")");
            ctrl.back() = (ctrl.back() + P.row(0)) / Scalar(2);
        } else {
            ctrl.push_back(P.row(0));
        }
        for (Eigen::Index r = 1; r < P.rows(); ++r) ctrl.push_back(P.row(r));
        const auto& kv = c.knots().values();
        for (std::size_t k = static_cast<std::size_t>(degree) + 1; k + degree + 1 < kv.size(); ++k)
            knots.push_back(kv[k]);
        const auto end_copies = static_cast<std::size_t>((i + 1 == parts.size()) ? degree + 1 : degree);
        for (std::size_t k = 0; k < end_copies; ++k) knots.push_back(end);
        start = end;
    }
    PointMatrix<Scalar> P(static_cast<Eigen::Index>(ctrl.size()), parts.front().dimension());
    for (std::size_t i = 0; i < ctrl.size(); ++i) P.row(static_cast<Eigen::Index>(i)) = ctrl[i];
    return BSplineCurve<Scalar>(degree, KnotVector<Scalar>(std::move(knots)), std::move(P));
}

} // namespace cnet
