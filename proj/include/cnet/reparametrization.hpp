#pragma once

#include "cnet/bspline_curve.hpp"

#include <optional>
#include <vector>

namespace cnet {

/// Samples used for the monotonicity check of a reparametrization function.
inline constexpr int kMonotonicitySamples = 1000;

struct ReparamOptions {
    /// Degree of the output; defaults to max(3, input degree).
    std::optional<int> degree;
    /// Points the output must hit at the target parameters; defaults to the input curve
    /// evaluated at the old parameters.
    std::vector<Point3> constraint_points;
};

struct ReparamResult {
    Curve curve;            ///< r(u) ~ c(sigma(u)), exact at the targets
    Curve sigma;            ///< one-dimensional map from target to old parameter
    double rms_error = 0;   ///< over the least-squares samples
    double max_error = 0;
    bool identity = false;  ///< old and target parameters coincided; input returned as is
};

/// Interpolating map sigma with sigma(target[i]) == old[i]: cubic where enough points
/// exist, clamped, knots averaged over the targets. Throws ReparametrizationError when
/// sigma' is not positive on a dense sample.
Curve reparametrization_function(const std::vector<double>& old_params,
                                 const std::vector<double>& target_params);

/// Approximates curve(sigma(u)) by a B-spline with `n_ctrl` control points over a uniform
/// clamped knot vector, constrained to pass exactly through the curve's points at the
/// target parameters. Interior knots of multiplicity >= degree in the input (kinks) are
/// reproduced at their mapped parameters. The curve must be defined over [0,1].
ReparamResult reparametrize_to_targets(const Curve& curve, const std::vector<double>& old_params,
                                       const std::vector<double>& target_params, int n_ctrl,
                                       const ReparamOptions& options = {});

} // namespace cnet
