#pragma once

#include "cnet/bspline_curve.hpp"

#include <vector>

namespace cnet {

/// N profile curves (u-direction sections) and M guide curves (v-direction rails).
struct CurveNetwork {
    std::vector<Curve> profiles;
    std::vector<Curve> guides;
};

/// Where each profile meets each guide. Matrices are indexed (profile k, guide l);
/// parameters refer to curves rescaled to [0,1].
struct IntersectionGrid {
    Eigen::MatrixXd u_tilde;                   ///< parameter on profile k of its crossing with guide l
    Eigen::MatrixXd v_tilde;                   ///< parameter on guide l of its crossing with profile k
    std::vector<std::vector<Point3>> points;   ///< points[k][l]
    std::vector<double> u_avg;                 ///< one per guide, in [0,1]
    std::vector<double> v_avg;                 ///< one per profile, in [0,1]
};

struct CurveCurveHit {
    double s = 0;        ///< parameter on the first curve
    double t = 0;        ///< parameter on the second curve
    double distance = 0;
};

struct CurvePointHit {
    double s = 0;
    double distance = 0;
};

/// Copy with every curve rescaled to [0,1]; periodic curves come back clamped.
CurveNetwork normalized(const CurveNetwork& network);

/// Diagonal of the axis-aligned box around all control points of the network.
double network_diagonal(const CurveNetwork& network);

/// Distinct places where two curves (both over [0,1]) come within `tol` of each other.
///
/// Candidate parameter boxes come from recursive Bezier subdivision with control-polygon
/// bounding boxes; each candidate is refined by damped Gauss-Newton on the squared
/// distance. Hits closer than 1e-4 in both parameters are merged.
std::vector<CurveCurveHit> intersect_curves(const Curve& a, const Curve& b, double tol);

/// Distinct parameters where the curve passes within `tol` of `point`.
std::vector<CurvePointHit> project_point(const Curve& c, const Point3& point, double tol);

/// Intersection parameters and points of a closed curve network.
///
/// Boundary crossings are fixed by the closure conditions: profiles start on the first
/// guide and end on the last, guides start on the first profile and end on the last. The
/// remaining parameter of a boundary pair is found by projection; interior pairs by
/// curve-curve intersection. Throws NetworkError for a pair that does not meet within
/// `tol` and AmbiguityError for a pair that meets more than once.
IntersectionGrid compute_intersections(const CurveNetwork& network, double tol);

} // namespace cnet
