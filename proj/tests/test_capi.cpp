#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cnet/capi.h"
#include "cnet/gordon.hpp"
#include "cnet/io/document.hpp"
#include "cnet/io/mesh.hpp"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

namespace {

std::string data(const std::string& name)
{
    return cnet::io::read_text_file(std::string(CNET_DATA_DIR) + "/" + name);
}

struct Handle {
    cnet_surface* s = nullptr;
    ~Handle() { cnet_surface_free(s); }
};

} // namespace

TEST_CASE("square network evaluates at its centre")
{
    Handle h;
    REQUIRE(cnet_build_gordon(data("square.json").c_str(), &h.s) == CNET_OK);
    REQUIRE(h.s != nullptr);
    CHECK(std::strlen(cnet_last_error()) == 0);
    double p[3] = {-1, -1, -1};
    REQUIRE(cnet_evaluate(h.s, 0.5, 0.5, p) == CNET_OK);
    CHECK(std::abs(p[0] - 0.5) <= 1e-14);
    CHECK(std::abs(p[1] - 0.5) <= 1e-14);
    CHECK(std::abs(p[2]) <= 1e-14);
}

TEST_CASE("errors set status and message")
{
    cnet_surface* s = reinterpret_cast<cnet_surface*>(0x1);
    CHECK(cnet_build_gordon(R"({"profiles": [{"type": "points", "pts": []}]})", &s) == CNET_ERR_PARSE);
    CHECK(s == nullptr);
    CHECK(std::string(cnet_last_error()).find("$.profiles[0]") != std::string::npos);

    CHECK(cnet_build_gordon(data("missing-intersection.json").c_str(), &s) == CNET_ERR_NETWORK);
    CHECK(std::string(cnet_last_error()).find("profile 1 and guide 0") != std::string::npos);

    CHECK(cnet_build_gordon(data("nonbijective.json").c_str(), &s) == CNET_ERR_REPARAMETRIZATION);
    CHECK(cnet_build_gordon(nullptr, &s) == CNET_ERR_INVALID_ARGUMENT);

    // a later success clears the message
    double z = 0;
    const double a[] = {1.0};
    CHECK(cnet_cst_evaluate(0.5, 1.0, a, 1, 0.0, 0.25, &z) == CNET_OK);
    CHECK(std::strlen(cnet_last_error()) == 0);
}

TEST_CASE("evaluation outside the domain fails")
{
    Handle h;
    REQUIRE(cnet_build_gordon(data("square.json").c_str(), &h.s) == CNET_OK);
    double p[3];
    CHECK(cnet_evaluate(h.s, 1.5, 0.5, p) == CNET_ERR_DOMAIN);
    CHECK(std::strlen(cnet_last_error()) > 0);
    CHECK(cnet_evaluate(h.s, 0.5, -0.1, p) == CNET_ERR_DOMAIN);
    CHECK(cnet_evaluate(nullptr, 0.5, 0.5, p) == CNET_ERR_INVALID_ARGUMENT);
    CHECK(cnet_evaluate(h.s, 0.5, 0.5, nullptr) == CNET_ERR_INVALID_ARGUMENT);
}

TEST_CASE("tessellation fills caller buffers")
{
    const auto text = data("wing.json");
    Handle h;
    REQUIRE(cnet_build_gordon(text.c_str(), &h.s) == CNET_OK);
    const int nu = 17, nv = 9;
    std::vector<double> v(3 * nu * nv, -7.0);
    std::vector<int> t(6 * (nu - 1) * (nv - 1), -1);
    REQUIRE(cnet_tessellate(h.s, nu, nv, v.data(), v.size(), t.data(), t.size()) == CNET_OK);

    const auto doc = cnet::io::parse_network(text);
    const auto surface = cnet::build_gordon_surface(cnet::io::realize(doc), doc.config.apply());
    const auto grid = cnet::io::tessellate(surface, nu, nv);
    double worst = 0;
    for (int i = 0; i < nu * nv; ++i)
        for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(v[3 * i + k] - grid.vertices(i, k)));
    CHECK(worst <= 1e-12);
    for (std::size_t i = 0; i < grid.triangles.size(); ++i)
        for (int k = 0; k < 3; ++k) CHECK(t[3 * i + k] == grid.triangles[i][k]);

    double p[3];
    REQUIRE(cnet_evaluate(h.s, 0.25, 0.5, p) == CNET_OK);
    const int idx = 4 * nu + 4;
    for (int k = 0; k < 3; ++k) CHECK(std::abs(v[3 * idx + k] - p[k]) <= 1e-12);

    CHECK(cnet_tessellate(h.s, nu, nv, v.data(), v.size(), nullptr, 0) == CNET_OK);
    CHECK(cnet_tessellate(h.s, nu, nv, v.data(), v.size() - 1, nullptr, 0) == CNET_ERR_INVALID_ARGUMENT);
    CHECK(std::string(cnet_last_error()).find("vertex buffer") != std::string::npos);
    CHECK(cnet_tessellate(h.s, nu, nv, v.data(), v.size(), t.data(), t.size() - 1) == CNET_ERR_INVALID_ARGUMENT);
    CHECK(cnet_tessellate(h.s, 1, nv, v.data(), v.size(), nullptr, 0) == CNET_ERR_INVALID_ARGUMENT);
}

TEST_CASE("surface documents load through the c interface")
{
    const auto doc = cnet::io::parse_network(data("square.json"));
    const auto json = cnet::io::serialize_surface(cnet::build_gordon_surface(cnet::io::realize(doc)));
    Handle h;
    REQUIRE(cnet_surface_from_json(json.c_str(), &h.s) == CNET_OK);
    double p[3];
    REQUIRE(cnet_evaluate(h.s, 1.0, 0.25, p) == CNET_OK);
    CHECK(std::abs(p[0] - 1.0) <= 1e-14);
    CHECK(std::abs(p[1] - 0.25) <= 1e-14);
    cnet_surface* bad = nullptr;
    CHECK(cnet_surface_from_json("[]", &bad) == CNET_ERR_PARSE);
    CHECK(bad == nullptr);
    cnet_surface_free(nullptr);
}

TEST_CASE("cst evaluation through the c interface")
{
    const double a[] = {2, 3, 2, 1};
    double z = -1;
    REQUIRE(cnet_cst_evaluate(0.5, 1.0, a, 4, 0.2, 0.0, &z) == CNET_OK);
    CHECK(z == 0.0);
    REQUIRE(cnet_cst_evaluate(0.5, 1.0, a, 4, 0.2, 1.0, &z) == CNET_OK);
    CHECK(z == 0.2);
    REQUIRE(cnet_cst_evaluate(0.5, 1.0, a, 4, 0.2, 0.5, &z) == CNET_OK);
    // C(0.5) = 0.5^0.5 * 0.5, S(0.5) = (2 + 3*3 + 2*3 + 1) / 8, plus 0.5 * zeta_te
    CHECK(std::abs(z - (std::sqrt(0.5) * 0.5 * 18.0 / 8.0 + 0.1)) <= 1e-15);
    CHECK(cnet_cst_evaluate(0.5, 1.0, a, 4, 0.2, 1.5, &z) == CNET_ERR_DOMAIN);
    CHECK(cnet_cst_evaluate(0.5, 1.0, a, 0, 0.2, 0.5, &z) == CNET_ERR_INVALID_ARGUMENT);
    CHECK(cnet_cst_evaluate(0.0, 1.0, a, 4, 0.2, 0.5, &z) == CNET_ERR_INVALID_ARGUMENT);
    CHECK(cnet_cst_evaluate(0.5, 1.0, nullptr, 4, 0.2, 0.5, &z) == CNET_ERR_INVALID_ARGUMENT);
}
