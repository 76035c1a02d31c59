#include "cnet/io/document.hpp"

#include "cnet/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace cnet::io {

using nlohmann::json;

namespace {

// Typed access to a JSON node that remembers where it sits in the document.
class Node {
public:
    Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

    const json& raw() const { return j_; }
    const std::string& path() const { return path_; }

    [[noreturn]] void fail(const std::string& what) const { throw ParseError(path_ + ": " + what); }

    bool has(const char* key) const { return j_.is_object() && j_.contains(key); }

    Node at(const char* key) const
    {
        if (!j_.is_object()) fail("expected an object");
        if (!j_.contains(key)) fail(std::string("missing field '") + key + "'");
        return {j_.at(key), path_ + "." + key};
    }
    Node item(std::size_t i) const { return {j_.at(i), path_ + "[" + std::to_string(i) + "]"}; }

    void only(std::initializer_list<const char*> keys) const
    {
        if (!j_.is_object()) fail("expected an object");
        for (const auto& [k, v] : j_.items()) {
            bool known = false;
            for (const char* key : keys) known = known || k == key;
            if (!known) throw ParseError(path_ + "." + k + ": unknown field");
        }
    }

    std::size_t size() const
    {
        if (!j_.is_array()) fail("expected an array");
        return j_.size();
    }

    double number() const
    {
        if (!j_.is_number()) fail("expected a number");
        const double v = j_.get<double>();
        if (!std::isfinite(v)) fail("number is not finite");
        return v;
    }
    int integer() const
    {
        if (!j_.is_number_integer()) fail("expected an integer");
        return j_.get<int>();
    }
    bool boolean() const
    {
        if (!j_.is_boolean()) fail("expected true or false");
        return j_.get<bool>();
    }
    std::string string() const
    {
        if (!j_.is_string()) fail("expected a string");
        return j_.get<std::string>();
    }
    Vec3 vec3() const
    {
        if (size() != 3) fail("expected 3 numbers");
        return {item(0).number(), item(1).number(), item(2).number()};
    }
    std::vector<double> numbers() const
    {
        std::vector<double> out;
        for (std::size_t i = 0; i < size(); ++i) out.push_back(item(i).number());
        return out;
    }
    std::vector<Vec3> vec3s() const
    {
        std::vector<Vec3> out;
        for (std::size_t i = 0; i < size(); ++i) out.push_back(item(i).vec3());
        return out;
    }

private:
    const json& j_;
    std::string path_;
};

CstParameters parse_cst(const Node& n)
{
    n.only({"n1", "n2", "coefficients", "zeta_te"});
    CstParameters p;
    p.n1 = n.at("n1").number();
    p.n2 = n.at("n2").number();
    p.coefficients = n.at("coefficients").numbers();
    if (n.has("zeta_te")) p.zeta_te = n.at("zeta_te").number();
    return p;
}

CurveSpec parse_curve(const Node& n)
{
    CurveSpec spec;
    const std::string type = n.at("type").string();
    if (n.has("name")) spec.name = n.at("name").string();
    if (n.has("transform")) {
        const Node t = n.at("transform");
        t.only({"scale", "translate"});
        Transform tr;
        if (t.has("scale")) tr.scale = t.at("scale").number();
        if (t.has("translate")) tr.translate = t.at("translate").vec3();
        spec.transform = tr;
    }
    if (type == "bspline") {
        n.only({"type", "name", "transform", "degree", "knots", "control_points", "periodic"});
        BSplineSpec s;
        s.degree = n.at("degree").integer();
        s.knots = n.at("knots").numbers();
        s.control_points = n.at("control_points").vec3s();
        if (n.has("periodic")) s.periodic = n.at("periodic").boolean();
        spec.shape = std::move(s);
    } else if (type == "points") {
        n.only({"type", "name", "transform", "points"});
        spec.shape = PointsSpec{n.at("points").vec3s()};
    } else if (type == "cst") {
        n.only({"type", "name", "transform", "upper", "lower", "n_samples", "n_ctrl"});
        CstSpec s;
        s.upper = parse_cst(n.at("upper"));
        s.lower = parse_cst(n.at("lower"));
        if (n.has("n_samples")) s.n_samples = n.at("n_samples").integer();
        if (n.has("n_ctrl")) s.n_ctrl = n.at("n_ctrl").integer();
        spec.shape = std::move(s);
    } else if (type == "guide_points") {
        n.only({"type", "name", "transform", "start", "end", "c_start", "c_end", "beta_dir", "points"});
        GuidePointsSpec s;
        s.start = n.at("start").vec3();
        s.end = n.at("end").vec3();
        s.c_start = n.at("c_start").number();
        s.c_end = n.at("c_end").number();
        s.beta_dir = n.at("beta_dir").vec3();
        s.points = n.at("points").vec3s();
        spec.shape = std::move(s);
    } else if (type == "composite") {
        n.only({"type", "name", "transform", "parts"});
        CompositeSpec s;
        const Node parts = n.at("parts");
        for (std::size_t i = 0; i < parts.size(); ++i) {
            const Node p = parts.item(i);
            p.only({"id", "previous", "continuity", "points"});
            CompositePartSpec part;
            part.id = p.at("id").integer();
            if (p.has("previous")) part.previous = p.at("previous").integer();
            if (p.has("continuity")) {
                const auto c = continuity_from_string(p.at("continuity").string());
                if (!c) p.at("continuity").fail("unknown continuity condition");
                part.continuity = *c;
            }
            part.points = p.at("points").vec3s();
            s.parts.push_back(std::move(part));
        }
        spec.shape = std::move(s);
    } else {
        n.at("type").fail("unknown curve type '" + type + "'");
    }
    return spec;
}

std::string curve_label(const char* family, std::size_t i, const CurveSpec& spec)
{
    std::string label = std::string(family) + "[" + std::to_string(i) + "]";
    if (spec.name) label += " '" + *spec.name + "'";
    return label;
}

json vec3_json(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

json vec3s_json(const std::vector<Vec3>& pts)
{
    json a = json::array();
    for (const auto& p : pts) a.push_back(vec3_json(p));
    return a;
}

json cst_json(const CstParameters& p)
{
    return {{"n1", p.n1}, {"n2", p.n2}, {"coefficients", p.coefficients}, {"zeta_te", p.zeta_te}};
}

json curve_json(const CurveSpec& spec)
{
    json j = json::object();
    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, BSplineSpec>) {
                j["type"] = "bspline";
                j["degree"] = s.degree;
                j["knots"] = s.knots;
                j["control_points"] = vec3s_json(s.control_points);
                if (s.periodic) j["periodic"] = true;
            } else if constexpr (std::is_same_v<T, PointsSpec>) {
                j["type"] = "points";
                j["points"] = vec3s_json(s.points);
            } else if constexpr (std::is_same_v<T, CstSpec>) {
                j["type"] = "cst";
                j["upper"] = cst_json(s.upper);
                j["lower"] = cst_json(s.lower);
                j["n_samples"] = s.n_samples;
                j["n_ctrl"] = s.n_ctrl;
            } else if constexpr (std::is_same_v<T, GuidePointsSpec>) {
                j["type"] = "guide_points";
                j["start"] = vec3_json(s.start);
                j["end"] = vec3_json(s.end);
                j["c_start"] = s.c_start;
                j["c_end"] = s.c_end;
                j["beta_dir"] = vec3_json(s.beta_dir);
                j["points"] = vec3s_json(s.points);
            } else {
                j["type"] = "composite";
                json parts = json::array();
                for (const auto& p : s.parts) {
                    json pj = {{"id", p.id}};
                    if (p.previous) pj["previous"] = *p.previous;
                    pj["continuity"] = to_string(p.continuity);
                    pj["points"] = vec3s_json(p.points);
                    parts.push_back(std::move(pj));
                }
                j["parts"] = std::move(parts);
            }
        },
        spec.shape);
    if (spec.name) j["name"] = *spec.name;
    if (spec.transform)
        j["transform"] = {{"scale", spec.transform->scale}, {"translate", vec3_json(spec.transform->translate)}};
    return j;
}

PointMatrix<double> to_matrix(const std::vector<Vec3>& pts)
{
    PointMatrix<double> m(static_cast<Eigen::Index>(pts.size()), 3);
    for (std::size_t i = 0; i < pts.size(); ++i)
        m.row(static_cast<Eigen::Index>(i)) << pts[i][0], pts[i][1], pts[i][2];
    return m;
}

Point3 to_point(const Vec3& v) { return {v[0], v[1], v[2]}; }

Curve build_shape(const CurveSpec& spec)
{
    return std::visit(
        [](const auto& s) -> Curve {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, BSplineSpec>) {
                const std::size_t expected = s.control_points.size() + static_cast<std::size_t>(s.degree) + 1;
                if (s.knots.size() != expected)
                    throw ValidationError("knot count " + std::to_string(s.knots.size()) + " does not match " +
                                          std::to_string(s.control_points.size()) + " control points of degree " +
                                          std::to_string(s.degree) + " (expected " + std::to_string(expected) + ")");
                return Curve(s.degree, KnotVector<double>(s.knots), to_matrix(s.control_points), s.periodic);
            } else if constexpr (std::is_same_v<T, PointsSpec>) {
                return point_list_profile(to_matrix(s.points));
            } else if constexpr (std::is_same_v<T, CstSpec>) {
                return cst_to_curve(s.upper, s.lower, s.n_samples, s.n_ctrl);
            } else if constexpr (std::is_same_v<T, GuidePointsSpec>) {
                std::vector<GuidePointLocal> locals;
                for (const auto& p : s.points) locals.push_back({p[0], p[1], p[2]});
                return guide_from_points(to_point(s.start), to_point(s.end), locals, s.c_start, s.c_end,
                                         to_point(s.beta_dir));
            } else {
                std::vector<GuidePart> parts;
                for (const auto& p : s.parts) parts.push_back({p.id, p.previous, p.continuity, to_matrix(p.points)});
                return assemble_guide_curve(parts);
            }
        },
        spec.shape);
}

} // namespace

GordonConfig ConfigOverrides::apply(GordonConfig base) const
{
    if (intersection_tol) base.intersection_tol = *intersection_tol;
    if (approx_tol) base.approx_tol = *approx_tol;
    if (n_samples_check) base.n_samples_check = *n_samples_check;
    if (ctrl_factor) base.ctrl_factor = *ctrl_factor;
    if (refine) base.refine = *refine;
    if (max_refinements) base.max_refinements = *max_refinements;
    return base;
}

Curve realize(const CurveSpec& spec)
{
    Curve c = build_shape(spec);
    if (!spec.transform) return c;
    const auto& t = spec.transform;
    if (!(t->scale > 0)) throw ValidationError("transform scale must be positive");
    PointMatrix<double> p = c.control_points() * t->scale;
    p.rowwise() += Eigen::RowVector3d(t->translate[0], t->translate[1], t->translate[2]);
    return Curve(c.degree(), c.knots(), std::move(p), c.periodic());
}

namespace {

std::vector<Curve> realize_family(const std::vector<CurveSpec>& specs, const char* family)
{
    std::vector<Curve> out;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        try {
            out.push_back(realize(specs[i]));
        } catch (const ValidationError& e) {
            throw ValidationError(curve_label(family, i, specs[i]) + ": " + e.what());
        } catch (const InvalidArgument& e) {
            throw ValidationError(curve_label(family, i, specs[i]) + ": " + e.what());
        } catch (const DomainError& e) {
            throw ValidationError(curve_label(family, i, specs[i]) + ": " + e.what());
        } catch (const GraphError& e) {
            throw ValidationError(curve_label(family, i, specs[i]) + ": " + e.what());
        }
    }
    return out;
}

} // namespace

CurveNetwork realize(const NetworkDocument& doc)
{
    return {realize_family(doc.profiles, "profiles"), realize_family(doc.guides, "guides")};
}

NetworkDocument parse_network(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("$: malformed JSON: ") + e.what());
    }
    const Node root(j, "$");
    root.only({"profiles", "guides", "config"});
    NetworkDocument doc;
    const Node profiles = root.at("profiles");
    for (std::size_t i = 0; i < profiles.size(); ++i) doc.profiles.push_back(parse_curve(profiles.item(i)));
    if (root.has("guides")) {
        const Node guides = root.at("guides");
        for (std::size_t i = 0; i < guides.size(); ++i) doc.guides.push_back(parse_curve(guides.item(i)));
    }
    if (root.has("config")) {
        const Node c = root.at("config");
        c.only({"intersection_tol", "approx_tol", "n_samples_check", "ctrl_factor", "refine", "max_refinements"});
        auto& o = doc.config;
        if (c.has("intersection_tol")) o.intersection_tol = c.at("intersection_tol").number();
        if (c.has("approx_tol")) o.approx_tol = c.at("approx_tol").number();
        if (c.has("n_samples_check")) o.n_samples_check = c.at("n_samples_check").integer();
        if (c.has("ctrl_factor")) o.ctrl_factor = c.at("ctrl_factor").integer();
        if (c.has("refine")) o.refine = c.at("refine").boolean();
        if (c.has("max_refinements")) o.max_refinements = c.at("max_refinements").integer();
        if (o.intersection_tol && !(*o.intersection_tol > 0)) throw ValidationError("config.intersection_tol must be positive");
        if (o.approx_tol && !(*o.approx_tol > 0)) throw ValidationError("config.approx_tol must be positive");
        if (o.n_samples_check && *o.n_samples_check < 2) throw ValidationError("config.n_samples_check must be at least 2");
        if (o.ctrl_factor && *o.ctrl_factor < 1) throw ValidationError("config.ctrl_factor must be at least 1");
        if (o.max_refinements && *o.max_refinements < 0) throw ValidationError("config.max_refinements must be non-negative");
    }

    std::set<std::string> names;
    for (const auto* family : {&doc.profiles, &doc.guides})
        for (const auto& c : *family)
            if (c.name && !names.insert(*c.name).second) throw ValidationError("curve name '" + *c.name + "' is not unique");

    realize(doc);
    return doc;
}

std::string serialize_network(const NetworkDocument& doc)
{
    json j = json::object();
    j["profiles"] = json::array();
    for (const auto& c : doc.profiles) j["profiles"].push_back(curve_json(c));
    j["guides"] = json::array();
    for (const auto& c : doc.guides) j["guides"].push_back(curve_json(c));
    json cfg = json::object();
    const auto& o = doc.config;
    if (o.intersection_tol) cfg["intersection_tol"] = *o.intersection_tol;
    if (o.approx_tol) cfg["approx_tol"] = *o.approx_tol;
    if (o.n_samples_check) cfg["n_samples_check"] = *o.n_samples_check;
    if (o.ctrl_factor) cfg["ctrl_factor"] = *o.ctrl_factor;
    if (o.refine) cfg["refine"] = *o.refine;
    if (o.max_refinements) cfg["max_refinements"] = *o.max_refinements;
    if (!cfg.empty()) j["config"] = std::move(cfg);
    return j.dump(2) + "\n";
}

std::string read_text_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error while reading '" + path + "'");
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out) throw IoError("error while writing '" + path + "'");
}

NetworkDocument read_network_file(const std::string& path) { return parse_network(read_text_file(path)); }

Surface parse_surface(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("$: malformed JSON: ") + e.what());
    }
    const Node root(j, "$");
    root.only({"type", "degree_u", "degree_v", "knots_u", "knots_v", "control_points"});
    if (root.at("type").string() != "bspline_surface") root.at("type").fail("expected 'bspline_surface'");
    const int du = root.at("degree_u").integer(), dv = root.at("degree_v").integer();
    const auto ku = root.at("knots_u").numbers(), kv = root.at("knots_v").numbers();
    const Node rows = root.at("control_points");
    std::vector<std::vector<PointRow<double>>> grid;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto pts = rows.item(i).vec3s();
        auto& row = grid.emplace_back();
        for (const auto& p : pts) row.push_back(Eigen::RowVector3d(p[0], p[1], p[2]));
    }
    try {
        return Surface::from_grid(du, dv, KnotVector<double>(ku), KnotVector<double>(kv), grid);
    } catch (const InvalidArgument& e) {
        throw ValidationError(std::string("surface: ") + e.what());
    }
}

std::string serialize_surface(const Surface& s)
{
    if (s.dimension() != 3) throw InvalidArgument("serialize_surface: only 3-D surfaces are supported");
    json rows = json::array();
    for (Eigen::Index i = 0; i < s.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < s.cols(); ++j) {
            const auto p = s.control_point(i, j);
            row.push_back(json::array({p[0], p[1], p[2]}));
        }
        rows.push_back(std::move(row));
    }
    json j = {{"type", "bspline_surface"},
              {"degree_u", s.degree_u()},
              {"degree_v", s.degree_v()},
              {"knots_u", s.knots_u().values()},
              {"knots_v", s.knots_v().values()},
              {"control_points", std::move(rows)}};
    return j.dump(2) + "\n";
}

Surface read_surface_file(const std::string& path) { return parse_surface(read_text_file(path)); }

} // namespace cnet::io
