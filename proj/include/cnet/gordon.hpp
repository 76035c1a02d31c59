#pragma once

#include "cnet/bspline_surface.hpp"
#include "cnet/curve_network.hpp"

#include <vector>

namespace cnet {

/// Tolerances are relative to the network's bounding-box diagonal.
struct GordonConfig {
    double intersection_tol = 1e-7;
    /// Target for the reparametrization fit error; control points are doubled until
    /// every fit meets it (when `refine` is set) or `max_refinements` is reached.
    double approx_tol = 1e-4;
    int n_samples_check = 64;
    /// Multiplies the control-point count chosen for reparametrized curves.
    int ctrl_factor = 1;
    bool refine = true;
    int max_refinements = 6;

    friend bool operator==(const GordonConfig&, const GordonConfig&) = default;
};

struct GordonReport {
    double diagonal = 0;
    double profile_isocurve_error = 0;   ///< max |s(u, v_k) - f_k(u)|
    double guide_isocurve_error = 0;     ///< max |s(u_l, v) - g_l(v)|
    double intersection_error = 0;       ///< max |s(u_l, v_k) - alpha_kl|
    double original_curve_error = 0;     ///< max distance bound from the input curves to s
    double max_fit_error = 0;            ///< worst reparametrization sample error
    int profile_ctrl = 0;                ///< control points per reparametrized profile (0: none needed)
    int guide_ctrl = 0;
};

struct GordonResult {
    Surface surface;
    IntersectionGrid grid;
    std::vector<Curve> profiles;        ///< reparametrized and mutually compatible
    std::vector<Curve> guides;
    std::vector<Curve> profile_sigmas;  ///< target -> original parameter maps
    std::vector<Curve> guide_sigmas;
    Surface profile_skin;               ///< S_f
    Surface guide_skin;                 ///< S_g
    Surface tensor;                     ///< T
    GordonReport report;
};

/// Sum of the two skinning surfaces minus the tensor-product surface, after raising all
/// three to common degrees and knot vectors.
Surface combine_summands(const Surface& profile_skin, const Surface& guide_skin, const Surface& tensor);

/// Interpolating surface of a profile/guide curve network.
///
/// Finds the network intersections, reparametrizes every curve so that all profiles
/// cross each guide at one common parameter (and vice versa), skins both families,
/// interpolates the intersection grid and combines the three surfaces.
GordonResult build_gordon(const CurveNetwork& network, const GordonConfig& config = {});

/// Skinning surface through curves without guides: each curve is rescaled to [0,1], the
/// family is made compatible and v parameters are chord lengths between control-point
/// centroids.
Surface loft(const std::vector<Curve>& curves);

inline Surface build_gordon_surface(const CurveNetwork& network, const GordonConfig& config = {})
{
    return build_gordon(network, config).surface;
}

} // namespace cnet
