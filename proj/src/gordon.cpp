#include "cnet/gordon.hpp"

#include "cnet/curve_ops.hpp"
#include "cnet/errors.hpp"
#include "cnet/reparametrization.hpp"
#include "cnet/skinning.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace cnet {

namespace {

constexpr double kDomainTol = 1e-12;

struct FamilyFit {
    std::vector<Curve> curves;
    std::vector<Curve> sigmas;
    double max_error = 0;
    int ctrl = 0;
};

/// Reparametrizes one family of curves onto common target parameters.
///
/// `old_params[i]` / `points[i]` list curve i's crossing parameters and the intersection
/// points it must pass through.
FamilyFit reparametrize_family(const std::vector<Curve>& curves, const std::vector<std::vector<double>>& old_params,
                               const std::vector<std::vector<Point3>>& points, const std::vector<double>& targets,
                               const GordonConfig& config, double abs_approx_tol, const char* family)
{
    int degree = 3, max_ctrl = 0;
    for (const auto& c : curves) {
        degree = std::max(degree, c.degree());
        max_ctrl = std::max(max_ctrl, static_cast<int>(c.num_control_points()));
    }
    const int floor_ctrl = std::max(degree + 2, static_cast<int>(targets.size()) + degree + 1);
    int n = std::max(max_ctrl, floor_ctrl) * std::max(1, config.ctrl_factor);

    for (int attempt = 0;; ++attempt) {
        const bool last = !config.refine || attempt >= config.max_refinements;
        FamilyFit fit;
        bool any_fit = false;
        try {
            for (std::size_t i = 0; i < curves.size(); ++i) {
                ReparamOptions opts;
                opts.degree = degree;
                opts.constraint_points = points[i];
                ReparamResult r;
                try {
                    r = reparametrize_to_targets(curves[i], old_params[i], targets, n, opts);
                } catch (const ReparametrizationError& e) {
                    throw ReparametrizationError(std::string(family) + " " + std::to_string(i) + ": " + e.what());
                }
                any_fit = any_fit || !r.identity;
                fit.max_error = std::max(fit.max_error, r.max_error);
                fit.curves.push_back(std::move(r.curve));
                fit.sigmas.push_back(std::move(r.sigma));
            }
        } catch (const NumericError&) {
            if (last) throw;
            n *= 2;
            continue;
        }
        fit.ctrl = any_fit ? n : 0;
        if (last || fit.max_error <= abs_approx_tol) return fit;
        n *= 2;
    }
}

void check_unit_domain(const Surface& s, const char* name)
{
    const auto [u0, u1] = s.domain_u();
    const auto [v0, v1] = s.domain_v();
    if (std::abs(u0) > kDomainTol || std::abs(u1 - 1) > kDomainTol || std::abs(v0) > kDomainTol ||
        std::abs(v1 - 1) > kDomainTol)
        throw InvalidArgument(std::string("combine_summands: ") + name + " is not defined over [0,1]x[0,1]");
}

double sigma_at(const Curve& sigma, double u) { return std::clamp(sigma.evaluate(u)[0], 0.0, 1.0); }

} // namespace

Surface combine_summands(const Surface& profile_skin, const Surface& guide_skin, const Surface& tensor)
{
    check_unit_domain(profile_skin, "profile skin");
    check_unit_domain(guide_skin, "guide skin");
    check_unit_domain(tensor, "tensor-product surface");
    const auto parts = make_surfaces_compatible<double>({profile_skin, guide_skin, tensor});
    const auto& a = parts[0];
    const auto& b = parts[1];
    const auto& c = parts[2];
    if (a.net().rows() != b.net().rows() || a.net().rows() != c.net().rows() || a.net().cols() != b.net().cols() ||
        a.net().cols() != c.net().cols())
        throw NumericError("combine_summands: surfaces still incompatible after refinement");
    PointMatrix<double> net = a.net() + b.net() - c.net();
    return Surface(a.degree_u(), a.degree_v(), a.knots_u(), a.knots_v(), std::move(net), 3);
}

Surface loft(const std::vector<Curve>& curves)
{
    if (curves.size() < 2) throw InvalidArgument("loft needs at least 2 curves");
    std::vector<Curve> unit;
    for (const auto& c : curves) unit.push_back(with_domain(to_clamped(c), 0.0, 1.0));
    const auto compatible = make_curves_compatible(unit);
    PointMatrix<double> centroids(static_cast<Eigen::Index>(compatible.size()), compatible.front().dimension());
    for (std::size_t k = 0; k < compatible.size(); ++k)
        centroids.row(static_cast<Eigen::Index>(k)) = compatible[k].control_points().colwise().mean();
    const auto params = chord_length_params(centroids);
    return skin_curves(compatible, params, default_skin_degree(compatible.size()));
}

GordonResult build_gordon(const CurveNetwork& input, const GordonConfig& config)
{
    const double diagonal = network_diagonal(input);
    if (!(diagonal > 0)) throw NetworkError("curve network has zero extent");
    const CurveNetwork network = normalized(input);
    const std::size_t N = network.profiles.size(), M = network.guides.size();

    GordonResult result;
    result.report.diagonal = diagonal;
    result.grid = compute_intersections(network, config.intersection_tol * diagonal);
    const auto& grid = result.grid;
    const double approx_tol = config.approx_tol * diagonal;

    std::vector<std::vector<double>> profile_old(N), guide_old(M);
    std::vector<std::vector<Point3>> profile_pts(N), guide_pts(M);
    for (std::size_t k = 0; k < N; ++k)
        for (std::size_t l = 0; l < M; ++l) {
            const auto ki = static_cast<Eigen::Index>(k), li = static_cast<Eigen::Index>(l);
            profile_old[k].push_back(grid.u_tilde(ki, li));
            profile_pts[k].push_back(grid.points[k][l]);
            guide_old[l].push_back(grid.v_tilde(ki, li));
            guide_pts[l].push_back(grid.points[k][l]);
        }

    auto profiles = reparametrize_family(network.profiles, profile_old, profile_pts, grid.u_avg, config, approx_tol, "profile");
    auto guides = reparametrize_family(network.guides, guide_old, guide_pts, grid.v_avg, config, approx_tol, "guide");
    result.profiles = make_curves_compatible(profiles.curves);
    result.guides = make_curves_compatible(guides.curves);
    result.profile_sigmas = std::move(profiles.sigmas);
    result.guide_sigmas = std::move(guides.sigmas);
    result.report.max_fit_error = std::max(profiles.max_error, guides.max_error);
    result.report.profile_ctrl = profiles.ctrl;
    result.report.guide_ctrl = guides.ctrl;

    const int degree_f = default_skin_degree(N);
    const int degree_g = default_skin_degree(M);
    const auto knots_f = averaged_knots(grid.v_avg, degree_f);
    const auto knots_g = averaged_knots(grid.u_avg, degree_g);

    result.profile_skin = skin_curves(result.profiles, grid.v_avg, degree_f, std::optional(knots_f));
    result.guide_skin = skin_curves(result.guides, grid.u_avg, degree_g, std::optional(knots_g)).transposed();
    std::vector<std::vector<PointRow<double>>> alpha(M, std::vector<PointRow<double>>(N));
    for (std::size_t k = 0; k < N; ++k)
        for (std::size_t l = 0; l < M; ++l) alpha[l][k] = grid.points[k][l];
    result.tensor = tensor_interpolate(alpha, grid.u_avg, grid.v_avg, degree_g, degree_f, knots_g, knots_f);
    result.surface = combine_summands(result.profile_skin, result.guide_skin, result.tensor);

    // Verification figures on the finished surface.
    auto& rep = result.report;
    const int ns = std::max(2, config.n_samples_check);
    const int dense = 4 * ns;
    const auto& s = result.surface;
    for (std::size_t k = 0; k < N; ++k) {
        const double v = grid.v_avg[k];
        for (int i = 0; i < ns; ++i) {
            const double u = double(i) / (ns - 1);
            rep.profile_isocurve_error =
                std::max(rep.profile_isocurve_error, (s.evaluate(u, v) - result.profiles[k].evaluate(u)).norm());
        }
        for (int i = 0; i < dense; ++i) {
            const double u = double(i) / (dense - 1);
            const Point3 original = network.profiles[k].evaluate(sigma_at(result.profile_sigmas[k], u));
            rep.original_curve_error = std::max(rep.original_curve_error, (s.evaluate(u, v) - original).norm());
        }
        for (std::size_t l = 0; l < M; ++l)
            rep.intersection_error =
                std::max(rep.intersection_error, (s.evaluate(grid.u_avg[l], v) - grid.points[k][l]).norm());
    }
    for (std::size_t l = 0; l < M; ++l) {
        const double u = grid.u_avg[l];
        for (int i = 0; i < ns; ++i) {
            const double v = double(i) / (ns - 1);
            rep.guide_isocurve_error =
                std::max(rep.guide_isocurve_error, (s.evaluate(u, v) - result.guides[l].evaluate(v)).norm());
        }
        for (int i = 0; i < dense; ++i) {
            const double v = double(i) / (dense - 1);
            const Point3 original = network.guides[l].evaluate(sigma_at(result.guide_sigmas[l], v));
            rep.original_curve_error = std::max(rep.original_curve_error, (s.evaluate(u, v) - original).norm());
        }
    }
    return result;
}

} // namespace cnet
