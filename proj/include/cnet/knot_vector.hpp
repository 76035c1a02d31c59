#pragma once

#include "cnet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace cnet {

/// Nondecreasing knot sequence.
///
/// Degree-aware queries (span lookup, domain, clamping) take the degree as an argument;
/// the knot vector itself does not know which curve it belongs to.
template <typename Scalar>
class KnotVector {
public:
    KnotVector() = default;

    explicit KnotVector(std::vector<Scalar> knots) : knots_(std::move(knots))
    {
        for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
            if (!(knots_[i] <= knots_[i + 1]))
                throw InvalidArgument("knot vector is not nondecreasing at index " +
                                      std::to_string(i));
        }
    }

    /// Clamped knot vector of the given degree with `num_ctrl` control points and
    /// uniformly spaced interior knots on [a, b].
    static KnotVector uniform_clamped(int degree, std::size_t num_ctrl, Scalar a = Scalar(0),
                                      Scalar b = Scalar(1))
    {
        if (degree < 0 || num_ctrl < static_cast<std::size_t>(degree) + 1)
            throw InvalidArgument("uniform_clamped: need at least degree+1 control points");
        const std::size_t p = static_cast<std::size_t>(degree);
        const std::size_t spans = num_ctrl - p;
        std::vector<Scalar> k;
        k.reserve(num_ctrl + p + 1);
        for (std::size_t i = 0; i <= p; ++i) k.push_back(a);
        for (std::size_t i = 1; i < spans; ++i)
            k.push_back(a + (b - a) * Scalar(i) / Scalar(spans));
        for (std::size_t i = 0; i <= p; ++i) k.push_back(b);
        return KnotVector(std::move(k));
    }

    [[nodiscard]] std::size_t size() const noexcept { return knots_.size(); }
    [[nodiscard]] Scalar operator[](std::size_t i) const { return knots_[i]; }
    [[nodiscard]] const std::vector<Scalar>& values() const noexcept { return knots_; }
    [[nodiscard]] auto begin() const noexcept { return knots_.begin(); }
    [[nodiscard]] auto end() const noexcept { return knots_.end(); }

    /// Number of control points a curve of `degree` over these knots carries.
    [[nodiscard]] std::size_t num_control_points(int degree) const
    {
        const std::size_t need = 2 * static_cast<std::size_t>(degree) + 2;
        if (knots_.size() < need) return 0;
        return knots_.size() - static_cast<std::size_t>(degree) - 1;
    }

    /// Parameter interval [knots[d], knots[n]].
    [[nodiscard]] std::pair<Scalar, Scalar> domain(int degree) const
    {
        const std::size_t n = num_control_points(degree);
        return {knots_[static_cast<std::size_t>(degree)], knots_[n]};
    }

    /// Index `k` with knots[k] <= u < knots[k+1], restricted to the domain spans.
    /// At the right domain end the last nonempty span is returned.
    [[nodiscard]] std::size_t find_span(Scalar u, int degree) const
    {
        const std::size_t p = static_cast<std::size_t>(degree);
        const std::size_t n = num_control_points(degree);
        if (u >= knots_[n]) {
            std::size_t k = n - 1;
            while (k > p && knots_[k] == knots_[k + 1]) --k;
            return k;
        }
        if (u <= knots_[p]) {
            std::size_t k = p;
            while (k + 1 < n && knots_[k] == knots_[k + 1]) ++k;
            return k;
        }
        const auto first = knots_.begin() + static_cast<std::ptrdiff_t>(p);
        const auto last = knots_.begin() + static_cast<std::ptrdiff_t>(n) + 1;
        const auto it = std::upper_bound(first, last, u);
        return static_cast<std::size_t>(it - knots_.begin()) - 1;
    }

    /// Number of knots equal to `u` within `tol`.
    [[nodiscard]] int multiplicity(Scalar u, Scalar tol = Scalar(0)) const
    {
        using std::abs;
        int m = 0;
        for (const Scalar k : knots_)
            if (abs(k - u) <= tol) ++m;
        return m;
    }

    /// Distinct knot values with their multiplicities.
    [[nodiscard]] std::vector<std::pair<Scalar, int>> unique_with_multiplicity() const
    {
        std::vector<std::pair<Scalar, int>> out;
        for (const Scalar k : knots_) {
            if (!out.empty() && out.back().first == k)
                ++out.back().second;
            else
                out.emplace_back(k, 1);
        }
        return out;
    }

    [[nodiscard]] bool is_clamped(int degree) const
    {
        const std::size_t p = static_cast<std::size_t>(degree);
        if (knots_.size() < 2 * p + 2) return false;
        const std::size_t last = knots_.size() - 1;
        for (std::size_t i = 1; i <= p; ++i) {
            if (knots_[i] != knots_[0] || knots_[last - i] != knots_[last]) return false;
        }
        return true;
    }

    /// Affine map of all knots so that the degree's domain becomes [a, b].
    [[nodiscard]] KnotVector rescaled(int degree, Scalar a, Scalar b) const
    {
        const auto [lo, hi] = domain(degree);
        std::vector<Scalar> k(knots_.size());
        const Scalar scale = (b - a) / (hi - lo);
        for (std::size_t i = 0; i < k.size(); ++i) k[i] = a + (knots_[i] - lo) * scale;
        // pin the domain ends exactly
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (knots_[i] == lo) k[i] = a;
            if (knots_[i] == hi) k[i] = b;
        }
        return KnotVector(std::move(k));
    }

    friend bool operator==(const KnotVector& a, const KnotVector& b) { return a.knots_ == b.knots_; }

private:
    std::vector<Scalar> knots_;
};

/// Clamped knot vector obtained by averaging `degree` consecutive parameters.
///
/// Used for interpolation so the collocation matrix stays totally positive and banded.
template <typename Scalar>
KnotVector<Scalar> averaged_knots(const std::vector<Scalar>& params, int degree)
{
    const std::size_t n = params.size();
    const std::size_t p = static_cast<std::size_t>(degree);
    if (degree < 0 || n < p + 1)
        throw InvalidArgument("averaged_knots: " + std::to_string(n) +
                              " parameters cannot carry degree " + std::to_string(degree));
    std::vector<Scalar> k;
    k.reserve(n + p + 1);
    for (std::size_t i = 0; i <= p; ++i) k.push_back(params.front());
    for (std::size_t j = 1; j + p < n; ++j) {
        if (p == 0) {
            k.push_back(params[j]);
            continue;
        }
        Scalar sum = 0;
        for (std::size_t i = j; i < j + p; ++i) sum += params[i];
        k.push_back(sum / Scalar(p));
    }
    for (std::size_t i = 0; i <= p; ++i) k.push_back(params.back());
    if (p == 0) {
        // degree 0 has n+1 knots: parameter midpoints between the ends
        k.assign(1, params.front());
        for (std::size_t j = 1; j < n; ++j) k.push_back((params[j - 1] + params[j]) / Scalar(2));
        k.push_back(params.back());
    }
    return KnotVector<Scalar>(std::move(k));
}

} // namespace cnet
