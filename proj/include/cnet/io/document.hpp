#pragma once

#include "cnet/bspline_surface.hpp"
#include "cnet/curve_network.hpp"
#include "cnet/gordon.hpp"
#include "cnet/profiles.hpp"

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace cnet::io {

using Vec3 = std::array<double, 3>;

struct BSplineSpec {
    int degree = 3;
    std::vector<double> knots;
    std::vector<Vec3> control_points;
    bool periodic = false;
    friend bool operator==(const BSplineSpec&, const BSplineSpec&) = default;
};

struct PointsSpec {
    std::vector<Vec3> points;
    friend bool operator==(const PointsSpec&, const PointsSpec&) = default;
};

struct CstSpec {
    CstParameters upper;
    CstParameters lower;
    int n_samples = 401;
    int n_ctrl = 80;
    friend bool operator==(const CstSpec&, const CstSpec&) = default;
};

struct GuidePointsSpec {
    Vec3 start{};
    Vec3 end{};
    double c_start = 1;
    double c_end = 1;
    Vec3 beta_dir{};
    std::vector<Vec3> points;  ///< (alpha, beta, gamma)
    friend bool operator==(const GuidePointsSpec&, const GuidePointsSpec&) = default;
};

struct CompositePartSpec {
    int id = 0;
    std::optional<int> previous;
    Continuity continuity = Continuity::C0;
    std::vector<Vec3> points;
    friend bool operator==(const CompositePartSpec&, const CompositePartSpec&) = default;
};

struct CompositeSpec {
    std::vector<CompositePartSpec> parts;
    friend bool operator==(const CompositeSpec&, const CompositeSpec&) = default;
};

/// Applied after the curve is built: p -> scale * p + translate.
struct Transform {
    double scale = 1;
    Vec3 translate{};
    friend bool operator==(const Transform&, const Transform&) = default;
};

struct CurveSpec {
    std::optional<std::string> name;
    std::variant<BSplineSpec, PointsSpec, CstSpec, GuidePointsSpec, CompositeSpec> shape;
    std::optional<Transform> transform;
    friend bool operator==(const CurveSpec&, const CurveSpec&) = default;
};

struct ConfigOverrides {
    std::optional<double> intersection_tol;
    std::optional<double> approx_tol;
    std::optional<int> n_samples_check;
    std::optional<int> ctrl_factor;
    std::optional<bool> refine;
    std::optional<int> max_refinements;
    friend bool operator==(const ConfigOverrides&, const ConfigOverrides&) = default;

    [[nodiscard]] GordonConfig apply(GordonConfig base = {}) const;
};

struct NetworkDocument {
    std::vector<CurveSpec> profiles;
    std::vector<CurveSpec> guides;
    ConfigOverrides config;
    friend bool operator==(const NetworkDocument&, const NetworkDocument&) = default;
};

/// Parses and validates a network document. Schema violations throw ParseError with a
/// JSON path; curves that cannot be built throw ValidationError naming the curve.
NetworkDocument parse_network(const std::string& text);
std::string serialize_network(const NetworkDocument& doc);

Curve realize(const CurveSpec& spec);
CurveNetwork realize(const NetworkDocument& doc);

NetworkDocument read_network_file(const std::string& path);

Surface parse_surface(const std::string& text);
std::string serialize_surface(const Surface& s);
Surface read_surface_file(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace cnet::io
