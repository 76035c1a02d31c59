#pragma once

#include "cnet/bspline_curve.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cnet {

// CST airfoils: zeta(psi) = psi^n1 (1 - psi)^n2 * sum A_i B_i,n(psi) + psi * zeta_te

struct CstParameters {
    double n1 = 0.5;
    double n2 = 1.0;
    std::vector<double> coefficients;
    double zeta_te = 0.0;

    friend bool operator==(const CstParameters&, const CstParameters&) = default;
};

/// Throws InvalidArgument unless n1, n2 > 0 and the coefficient list is nonempty.
void validate(const CstParameters& p);

double cst_class(const CstParameters& p, double psi);
double cst_shape(const CstParameters& p, double psi);
double cst_evaluate(const CstParameters& p, double psi);

/// Clamped cubic through trailing edge -> lower side -> leading edge -> upper side ->
/// trailing edge, in the x/z plane (x = psi, y = 0, z = zeta).
///
/// The curve parameter t runs over [0,1] with psi = (1 - cos(pi (2t - 1))) / 2, so uniform
/// samples in t are cosine-spaced in psi. Both trailing-edge points and the leading edge
/// are interpolated exactly; the rest is a least-squares fit to `n_samples` points.
Curve cst_to_curve(const CstParameters& upper, const CstParameters& lower, int n_samples, int n_ctrl);

/// Interpolating clamped cubic at chord-length parameters. Needs at least 4 distinct points.
Curve point_list_profile(const PointMatrix<double>& points);

// Guide curves

struct GuidePointLocal {
    double alpha = 0;
    double beta = 0;
    double gamma = 0;
};

/// start + alpha (end - start) + c(alpha) (beta b + gamma n), c(alpha) = c_start (1 - alpha) + c_end alpha.
///
/// b is `beta_dir` with its component along the start-end axis removed, renormalized;
/// n = axis x b.
Point3 guide_point_to_3d(const Point3& start, const Point3& end, const GuidePointLocal& local, double c_start,
                         double c_end, const Point3& beta_dir);

/// Guide through start, the local points and end (cubic, chord-length parameters).
Curve guide_from_points(const Point3& start, const Point3& end, const std::vector<GuidePointLocal>& locals,
                        double c_start, double c_end, const Point3& beta_dir);

enum class Continuity { C0, C1FromPrevious, C1ToPrevious, C2FromPrevious, C2ToPrevious };

std::string to_string(Continuity c);
/// Accepts "C0", "C1 from previous", "C1 to previous", "C2 from previous", "C2 to previous".
std::optional<Continuity> continuity_from_string(const std::string& s);

/// A piece of a guide curve. `previous` names the part it continues; "from previous" takes
/// the start tangent from that part's end, "to previous" hands its start tangent to that
/// part's end. C2 is treated like C1.
struct GuidePart {
    int id = 0;
    std::optional<int> previous;
    Continuity continuity = Continuity::C0;
    PointMatrix<double> points;
};

/// Topological order (Kahn) of part ids such that every part comes after the parts whose
/// tangents it consumes. Ties go to the earlier input position.
/// Throws GraphError naming the parts on a dependency cycle.
std::vector<int> order_guide_parts(const std::vector<GuidePart>& parts);

/// One interpolating curve per part, returned in input order, with tangents propagated
/// across C1 junctions in dependency order.
std::vector<Curve> assemble_guide(const std::vector<GuidePart>& parts);

/// The parts of a composite guide in chain order, joined into one curve over [0,1].
Curve assemble_guide_curve(const std::vector<GuidePart>& parts);

} // namespace cnet
