#include "cnet/profiles.hpp"

#include "cnet/curve_ops.hpp"
#include "cnet/errors.hpp"
#include "cnet/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <queue>
#include <sstream>

namespace cnet {

void validate(const CstParameters& p)
{
    if (!(p.n1 > 0) || !(p.n2 > 0))
        throw InvalidArgument("CST exponents must be positive (n1=" + std::to_string(p.n1) +
                              ", n2=" + std::to_string(p.n2) + ")");
    if (p.coefficients.empty()) throw InvalidArgument("CST coefficient list is empty");
    for (double a : p.coefficients)
        if (!std::isfinite(a)) throw InvalidArgument("CST coefficient is not finite");
    if (!std::isfinite(p.zeta_te)) throw InvalidArgument("CST trailing-edge thickness is not finite");
}

namespace {

void check_psi(double psi)
{
    if (!(psi >= 0.0 && psi <= 1.0))
        throw DomainError("CST parameter psi=" + std::to_string(psi) + " outside [0,1]");
}

} // namespace

double cst_class(const CstParameters& p, double psi)
{
    check_psi(psi);
    return std::pow(psi, p.n1) * std::pow(1.0 - psi, p.n2);
}

double cst_shape(const CstParameters& p, double psi)
{
    check_psi(psi);
    const int n = static_cast<int>(p.coefficients.size()) - 1;
    if (n < 0) throw InvalidArgument("CST coefficient list is empty");
    // de Casteljau on the coefficients
    std::vector<double> b = p.coefficients;
    for (int r = 1; r <= n; ++r)
        for (int i = 0; i <= n - r; ++i) b[i] = (1.0 - psi) * b[i] + psi * b[i + 1];
    return b[0];
}

double cst_evaluate(const CstParameters& p, double psi)
{
    validate(p);
    return cst_class(p, psi) * cst_shape(p, psi) + psi * p.zeta_te;
}

namespace {

double cst_psi(double t) { return 0.5 * (1.0 - std::cos(std::numbers::pi * (2.0 * t - 1.0))); }

Point3 cst_point(const CstParameters& upper, const CstParameters& lower, double t)
{
    const double psi = std::clamp(cst_psi(t), 0.0, 1.0);
    const double zeta = (t < 0.5) ? cst_evaluate(lower, psi) : cst_evaluate(upper, psi);
    return {psi, 0.0, zeta};
}

/// Clamped cubic knots with a triple knot at the leading edge (t = 0.5): upper and lower
/// side meet there with different parametric slopes.
KnotVector<double> cst_knots(int n_ctrl)
{
    constexpr int p = 3;
    if (n_ctrl < 7) return KnotVector<double>::uniform_clamped(p, static_cast<std::size_t>(n_ctrl));
    const int free = n_ctrl - 7;
    const int lower = free / 2, upper = free - lower;
    std::vector<double> k(p + 1, 0.0);
    for (int i = 1; i <= lower; ++i) k.push_back(0.5 * i / (lower + 1));
    k.insert(k.end(), p, 0.5);
    for (int i = 1; i <= upper; ++i) k.push_back(0.5 + 0.5 * i / (upper + 1));
    k.insert(k.end(), p + 1, 1.0);
    return KnotVector<double>(std::move(k));
}

} // namespace

Curve cst_to_curve(const CstParameters& upper, const CstParameters& lower, int n_samples, int n_ctrl)
{
    validate(upper);
    validate(lower);
    if (n_ctrl < 4) throw InvalidArgument("cst_to_curve: need at least 4 control points");
    if (n_samples <= n_ctrl)
        throw InvalidArgument("cst_to_curve: " + std::to_string(n_samples) + " samples cannot fit " +
                              std::to_string(n_ctrl) + " control points");
    PointMatrix<double> samples(n_samples, 3);
    std::vector<double> params(static_cast<std::size_t>(n_samples));
    for (int i = 0; i < n_samples; ++i) {
        const double t = double(i) / (n_samples - 1);
        params[static_cast<std::size_t>(i)] = t;
        samples.row(i) = cst_point(upper, lower, t);
    }
    std::vector<FitConstraint<double>> constraints;
    for (double t : {0.0, 0.5, 1.0}) constraints.push_back({t, cst_point(upper, lower, t)});
    return approximate_constrained(samples, params, constraints, 3, cst_knots(n_ctrl));
}

Curve point_list_profile(const PointMatrix<double>& points)
{
    const auto distinct = collapse_duplicates(points);
    if (distinct.rows() < 4)
        throw InvalidArgument("point-list profile needs at least 4 distinct points, got " +
                              std::to_string(distinct.rows()));
    return interpolate_points(distinct, chord_length_params(distinct), 3);
}

Point3 guide_point_to_3d(const Point3& start, const Point3& end, const GuidePointLocal& local, double c_start,
                         double c_end, const Point3& beta_dir)
{
    const Point3 d = end - start;
    const double len = d.norm();
    if (!(len > 0)) throw InvalidArgument("guide point: start and end coincide");
    const Point3 axis = d / len;
    Point3 b = beta_dir - beta_dir.dot(axis) * axis;
    const double bn = b.norm();
    if (!(bn > 1e-12 * std::max(1.0, beta_dir.norm())))
        throw InvalidArgument("guide point: beta direction is parallel to the start-end axis");
    b /= bn;
    const Point3 n = axis.cross(b).normalized();
    const double c = c_start * (1.0 - local.alpha) + c_end * local.alpha;
    return start + local.alpha * d + c * (local.beta * b + local.gamma * n);
}

Curve guide_from_points(const Point3& start, const Point3& end, const std::vector<GuidePointLocal>& locals,
                        double c_start, double c_end, const Point3& beta_dir)
{
    std::vector<Point3> pts{start};
    double last_alpha = 0.0;
    for (const auto& l : locals) {
        if (!(l.alpha >= 0.0 && l.alpha <= 1.0))
            throw InvalidArgument("guide point alpha=" + std::to_string(l.alpha) + " outside [0,1]");
        if (!(l.alpha > last_alpha) || l.alpha >= 1.0)
            throw InvalidArgument("guide point alphas must increase strictly inside (0,1)");
        last_alpha = l.alpha;
        pts.push_back(guide_point_to_3d(start, end, l, c_start, c_end, beta_dir));
    }
    pts.push_back(end);
    PointMatrix<double> m(static_cast<Eigen::Index>(pts.size()), 3);
    for (std::size_t i = 0; i < pts.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = pts[i];
    const int degree = std::min<int>(3, static_cast<int>(pts.size()) - 1);
    return interpolate_points(m, chord_length_params(m), degree);
}

std::string to_string(Continuity c)
{
    switch (c) {
    case Continuity::C0: return "C0";
    case Continuity::C1FromPrevious: return "C1 from previous";
    case Continuity::C1ToPrevious: return "C1 to previous";
    case Continuity::C2FromPrevious: return "C2 from previous";
    case Continuity::C2ToPrevious: return "C2 to previous";
    }
    return "C0";
}

std::optional<Continuity> continuity_from_string(const std::string& s)
{
    for (auto c : {Continuity::C0, Continuity::C1FromPrevious, Continuity::C1ToPrevious, Continuity::C2FromPrevious,
                   Continuity::C2ToPrevious})
        if (to_string(c) == s) return c;
    return std::nullopt;
}

namespace {

bool from_previous(Continuity c) { return c == Continuity::C1FromPrevious || c == Continuity::C2FromPrevious; }
bool to_previous(Continuity c) { return c == Continuity::C1ToPrevious || c == Continuity::C2ToPrevious; }

std::map<int, std::size_t> index_parts(const std::vector<GuidePart>& parts)
{
    std::map<int, std::size_t> index;
    for (std::size_t i = 0; i < parts.size(); ++i)
        if (!index.emplace(parts[i].id, i).second)
            throw InvalidArgument("guide part id " + std::to_string(parts[i].id) + " appears twice");
    for (const auto& p : parts) {
        if (!p.previous) {
            if (p.continuity != Continuity::C0)
                throw InvalidArgument("guide part " + std::to_string(p.id) + " has a continuity condition but no previous part");
            continue;
        }
        if (!index.count(*p.previous))
            throw InvalidArgument("guide part " + std::to_string(p.id) + " refers to unknown part " +
                                  std::to_string(*p.previous));
        if (*p.previous == p.id) throw InvalidArgument("guide part " + std::to_string(p.id) + " is its own previous part");
    }
    return index;
}

/// deps[i]: input positions part i must wait for.
std::vector<std::vector<std::size_t>> dependencies(const std::vector<GuidePart>& parts,
                                                   const std::map<int, std::size_t>& index)
{
    std::vector<std::vector<std::size_t>> deps(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto& p = parts[i];
        if (!p.previous) continue;
        const std::size_t prev = index.at(*p.previous);
        if (from_previous(p.continuity)) deps[i].push_back(prev);
        else if (to_previous(p.continuity)) deps[prev].push_back(i);
    }
    return deps;
}

std::string describe_cycle(const std::vector<GuidePart>& parts, const std::vector<std::vector<std::size_t>>& deps,
                           const std::vector<bool>& done)
{
    // Every unfinished part waits on another unfinished part; walk until a repeat.
    std::size_t cur = 0;
    while (done[cur]) ++cur;
    std::vector<std::size_t> path;
    std::vector<int> seen(parts.size(), -1);
    while (seen[cur] < 0) {
        seen[cur] = static_cast<int>(path.size());
        path.push_back(cur);
        for (std::size_t d : deps[cur])
            if (!done[d]) {
                cur = d;
                break;
            }
    }
    std::ostringstream out;
    for (std::size_t i = static_cast<std::size_t>(seen[cur]); i < path.size(); ++i)
        out << parts[path[i]].id << " -> ";
    out << parts[cur].id;
    return out.str();
}

double polyline_length(const PointMatrix<double>& p)
{
    double len = 0;
    for (Eigen::Index i = 1; i < p.rows(); ++i) len += (p.row(i) - p.row(i - 1)).norm();
    return len;
}

} // namespace

std::vector<int> order_guide_parts(const std::vector<GuidePart>& parts)
{
    const auto index = index_parts(parts);
    const auto deps = dependencies(parts, index);
    std::vector<std::vector<std::size_t>> users(parts.size());
    std::vector<std::size_t> pending(parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) {
        pending[i] = deps[i].size();
        for (std::size_t d : deps[i]) users[d].push_back(i);
    }
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t i = 0; i < parts.size(); ++i)
        if (pending[i] == 0) ready.push(i);
    std::vector<int> order;
    std::vector<bool> done(parts.size(), false);
    while (!ready.empty()) {
        const std::size_t i = ready.top();
        ready.pop();
        done[i] = true;
        order.push_back(parts[i].id);
        for (std::size_t u : users[i])
            if (--pending[u] == 0) ready.push(u);
    }
    if (order.size() != parts.size())
        throw GraphError("guide parts have cyclic continuity dependencies: " + describe_cycle(parts, deps, done));
    return order;
}

std::vector<Curve> assemble_guide(const std::vector<GuidePart>& parts)
{
    const auto index = index_parts(parts);
    for (const auto& p : parts) {
        if (collapse_duplicates(p.points).rows() < 2)
            throw InvalidArgument("guide part " + std::to_string(p.id) + " needs at least 2 distinct points");
        if (!p.previous) continue;
        const auto& q = parts[index.at(*p.previous)].points;
        const double gap = (q.row(q.rows() - 1) - p.points.row(0)).norm();
        if (gap > 1e-9)
            throw InvalidArgument("guide part " + std::to_string(p.id) + " does not start where part " +
                                  std::to_string(*p.previous) + " ends (gap " + std::to_string(gap) + ")");
    }

    std::vector<EndTangents<double>> tangents(parts.size());
    std::vector<std::optional<Curve>> curves(parts.size());
    for (int id : order_guide_parts(parts)) {
        const std::size_t i = index.at(id);
        const auto& p = parts[i];
        const auto pts = collapse_duplicates(p.points);
        const double length = polyline_length(pts);
        if (p.previous && from_previous(p.continuity)) {
            const auto& prev = *curves[index.at(*p.previous)];
            tangents[i].start = PointRow<double>(prev.derivative(prev.domain().second, 1).normalized() * length);
        }
        for (std::size_t j = 0; j < parts.size(); ++j) {
            // the part continuing this one may hand over its start tangent
            const auto& q = parts[j];
            if (q.previous && *q.previous == id && to_previous(q.continuity)) {
                const auto& next = *curves[j];
                tangents[i].end = PointRow<double>(next.derivative(next.domain().first, 1).normalized() * length);
            }
        }
        const int conditions = static_cast<int>(pts.rows()) + (tangents[i].start ? 1 : 0) + (tangents[i].end ? 1 : 0);
        const int degree = std::min(3, conditions - 1);
        curves[i] = interpolate_points(pts, chord_length_params(pts), degree, false, tangents[i]);
    }
    std::vector<Curve> out;
    for (auto& c : curves) out.push_back(std::move(*c));
    return out;
}

Curve assemble_guide_curve(const std::vector<GuidePart>& parts)
{
    if (parts.empty()) throw InvalidArgument("composite guide has no parts");
    const auto curves = assemble_guide(parts);
    // chain order: the part without a previous one first, then follow the links
    std::map<int, std::size_t> next;
    std::optional<std::size_t> head;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (!parts[i].previous) {
            if (head) throw InvalidArgument("composite guide has more than one starting part");
            head = i;
        } else if (!next.emplace(*parts[i].previous, i).second) {
            throw InvalidArgument("composite guide branches after part " + std::to_string(*parts[i].previous));
        }
    }
    if (!head) throw InvalidArgument("composite guide has no starting part");
    std::vector<Curve> chain;
    std::vector<double> weights;
    for (std::optional<std::size_t> cur = head; cur;) {
        chain.push_back(curves[*cur]);
        weights.push_back(std::max(polyline_length(parts[*cur].points), 1e-300));
        const auto it = next.find(parts[*cur].id);
        cur = (it == next.end()) ? std::nullopt : std::optional(it->second);
    }
    if (chain.size() != parts.size()) throw InvalidArgument("composite guide parts do not form a single chain");
    return concatenate(chain, weights, 1e-9);
}

} // namespace cnet
