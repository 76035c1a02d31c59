#include "cnet/reparametrization.hpp"

#include "cnet/errors.hpp"
#include "cnet/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cnet {

namespace {

constexpr double kEndTol = 1e-12;
constexpr double kIdentityTol = 1e-12;
constexpr double kKinkMergeTol = 1e-10;

void check_param_list(const std::vector<double>& params, const char* what)
{
    if (params.size() < 2) throw InvalidArgument(std::string(what) + ": need at least 2 parameters");
    for (std::size_t i = 0; i + 1 < params.size(); ++i)
        if (!(params[i] < params[i + 1]))
            throw InvalidArgument(std::string(what) + ": parameters not strictly increasing at index " +
                                  std::to_string(i + 1));
    if (std::abs(params.front()) > kEndTol || std::abs(params.back() - 1.0) > kEndTol)
        throw InvalidArgument(std::string(what) + ": parameters must span [0,1]");
}

double eval_scalar(const Curve& c, double u) { return c.evaluate(std::clamp(u, 0.0, 1.0))[0]; }

/// u with sigma(u) == x, by bisection on the monotone map.
double invert(const Curve& sigma, double x)
{
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
        const double mid = 0.5 * (lo + hi);
        (eval_scalar(sigma, mid) < x ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

Curve reparametrization_function(const std::vector<double>& old_params, const std::vector<double>& target_params)
{
    check_param_list(old_params, "reparametrization (old)");
    check_param_list(target_params, "reparametrization (target)");
    if (old_params.size() != target_params.size())
        throw InvalidArgument("reparametrization: old and target parameter lists differ in length");
    const int degree = static_cast<int>(std::min<std::size_t>(3, old_params.size() - 1));
    PointMatrix<double> values(static_cast<Eigen::Index>(old_params.size()), 1);
    for (std::size_t i = 0; i < old_params.size(); ++i) values(static_cast<Eigen::Index>(i), 0) = old_params[i];
    Curve sigma = interpolate_points(values, target_params, degree);

    for (int i = 0; i <= kMonotonicitySamples; ++i) {
        const double u = double(i) / kMonotonicitySamples;
        const double slope = sigma.derivative(u, 1)[0];
        if (!(slope > 0.0))
            throw ReparametrizationError(
                "reparametrization function is not strictly increasing near u=" + std::to_string(u) +
                " (slope " + std::to_string(slope) +
                "); the intersection parameters deviate too far from their averages");
    }
    return sigma;
}

ReparamResult reparametrize_to_targets(const Curve& curve, const std::vector<double>& old_params,
                                       const std::vector<double>& target_params, int n_ctrl,
                                       const ReparamOptions& options)
{
    const auto [lo, hi] = curve.domain();
    if (std::abs(lo) > kEndTol || std::abs(hi - 1.0) > kEndTol)
        throw InvalidArgument("reparametrize_to_targets: curve must be defined over [0,1]");
    if (curve.dimension() != 3) throw InvalidArgument("reparametrize_to_targets: curve must be 3-D");
    if (!options.constraint_points.empty() && options.constraint_points.size() != target_params.size())
        throw InvalidArgument("reparametrize_to_targets: one constraint point per target parameter");

    Curve sigma = reparametrization_function(old_params, target_params);

    bool identity = true;
    for (std::size_t i = 0; i < old_params.size(); ++i)
        identity = identity && std::abs(old_params[i] - target_params[i]) <= kIdentityTol;
    if (identity) {
        PointMatrix<double> line(2, 1);
        line << 0.0, 1.0;
        return {curve, Curve(1, KnotVector<double>({0, 0, 1, 1}), line), 0.0, 0.0, true};
    }

    const int degree = options.degree.value_or(std::max(3, curve.degree()));
    if (n_ctrl < degree + 1)
        throw InvalidArgument("reparametrize_to_targets: " + std::to_string(n_ctrl) +
                              " control points cannot carry degree " + std::to_string(degree));

    std::vector<FitConstraint<double>> constraints;
    for (std::size_t i = 0; i < target_params.size(); ++i) {
        const Point3 p = options.constraint_points.empty() ? Point3(curve.evaluate(old_params[i]))
                                                           : options.constraint_points[i];
        constraints.push_back({target_params[i], p});
    }

    // Uniform knots plus full-multiplicity knots wherever the input has a kink.
    std::vector<double> knots = KnotVector<double>::uniform_clamped(degree, static_cast<std::size_t>(n_ctrl)).values();
    for (const auto& [value, mult] : curve.knots().unique_with_multiplicity()) {
        if (value <= 0.0 || value >= 1.0 || mult < curve.degree()) continue;
        const double at = invert(sigma, value);
        if (at <= kKinkMergeTol || at >= 1.0 - kKinkMergeTol) continue;
        const auto close = std::find_if(knots.begin(), knots.end(),
                                        [&](double k) { return std::abs(k - at) <= kKinkMergeTol; });
        const double knot = close != knots.end() ? *close : at;
        const auto have = std::count(knots.begin(), knots.end(), knot);
        knots.insert(std::upper_bound(knots.begin(), knots.end(), knot), static_cast<std::size_t>(degree - have), knot);
        const bool constrained = std::any_of(constraints.begin(), constraints.end(), [&](const auto& c) {
            return std::abs(c.param - knot) <= kKinkMergeTol;
        });
        if (!constrained) constraints.push_back({knot, curve.evaluate(value)});
    }
    std::sort(constraints.begin(), constraints.end(), [](const auto& a, const auto& b) { return a.param < b.param; });
    const KnotVector<double> kv(std::move(knots));
    const auto n = static_cast<int>(kv.num_control_points(degree));

    const int ns = std::max(10 * n, 100);
    std::vector<double> params(static_cast<std::size_t>(ns));
    PointMatrix<double> samples(ns, 3);
    for (int j = 0; j < ns; ++j) {
        const double u = double(j) / double(ns - 1);
        params[static_cast<std::size_t>(j)] = u;
        samples.row(j) = curve.evaluate(std::clamp(eval_scalar(sigma, u), 0.0, 1.0));
    }
    params.back() = 1.0;

    Curve fit = approximate_constrained(samples, params, constraints, degree, kv);

    double sum = 0, worst = 0;
    for (int j = 0; j < ns; ++j) {
        const double e = (fit.evaluate(params[static_cast<std::size_t>(j)]) - samples.row(j)).norm();
        sum += e * e;
        worst = std::max(worst, e);
    }
    return {std::move(fit), std::move(sigma), std::sqrt(sum / ns), worst, false};
}

} // namespace cnet
