#include "cnet/capi.h"

#include "cnet/errors.hpp"
#include "cnet/gordon.hpp"
#include "cnet/io/document.hpp"
#include "cnet/io/mesh.hpp"
#include "cnet/profiles.hpp"

#include <exception>
#include <new>
#include <string>

struct cnet_surface {
    cnet::Surface surface;
};

namespace {

thread_local std::string last_error;

cnet_status status_of(cnet::ErrorKind kind)
{
    using K = cnet::ErrorKind;
    switch (kind) {
    case K::InvalidArgument: return CNET_ERR_INVALID_ARGUMENT;
    case K::Domain: return CNET_ERR_DOMAIN;
    case K::Numeric: return CNET_ERR_NUMERIC;
    case K::Network: return CNET_ERR_NETWORK;
    case K::Ambiguity: return CNET_ERR_AMBIGUITY;
    case K::Reparametrization: return CNET_ERR_REPARAMETRIZATION;
    case K::Graph: return CNET_ERR_GRAPH;
    case K::Parse: return CNET_ERR_PARSE;
    case K::Validation: return CNET_ERR_VALIDATION;
    case K::Io: return CNET_ERR_IO;
    }
    return CNET_ERR_INTERNAL;
}

template <typename F>
cnet_status guarded(F&& f)
{
    try {
        f();
        last_error.clear();
        return CNET_OK;
    } catch (const cnet::Error& e) {
        last_error = e.what();
        return status_of(e.kind());
    } catch (const std::bad_alloc&) {
        last_error = "out of memory";
    } catch (const std::exception& e) {
        last_error = e.what();
    } catch (...) {
        last_error = "unknown error";
    }
    return CNET_ERR_INTERNAL;
}

void require(bool ok, const char* what)
{
    if (!ok) throw cnet::InvalidArgument(what);
}

} // namespace

extern "C" {

cnet_status cnet_build_gordon(const char* document, cnet_surface** out)
{
    return guarded([&] {
        require(document != nullptr && out != nullptr, "cnet_build_gordon: null argument");
        *out = nullptr;
        const auto doc = cnet::io::parse_network(document);
        auto surface = cnet::build_gordon_surface(cnet::io::realize(doc), doc.config.apply());
        *out = new cnet_surface{std::move(surface)};
    });
}

cnet_status cnet_surface_from_json(const char* document, cnet_surface** out)
{
    return guarded([&] {
        require(document != nullptr && out != nullptr, "cnet_surface_from_json: null argument");
        *out = nullptr;
        *out = new cnet_surface{cnet::io::parse_surface(document)};
    });
}

void cnet_surface_free(cnet_surface* surface) { delete surface; }

cnet_status cnet_evaluate(const cnet_surface* surface, double u, double v, double* xyz)
{
    return guarded([&] {
        require(surface != nullptr && xyz != nullptr, "cnet_evaluate: null argument");
        const auto p = surface->surface.evaluate(u, v);
        for (int i = 0; i < 3; ++i) xyz[i] = p[i];
    });
}

cnet_status cnet_tessellate(const cnet_surface* surface, int nu, int nv, double* vertices, size_t vertex_capacity,
                            int* triangles, size_t triangle_capacity)
{
    return guarded([&] {
        require(surface != nullptr && vertices != nullptr, "cnet_tessellate: null argument");
        require(nu >= 2 && nv >= 2, "cnet_tessellate: nu and nv must be at least 2");
        const auto nverts = static_cast<size_t>(nu) * static_cast<size_t>(nv);
        const auto ntris = 2 * static_cast<size_t>(nu - 1) * static_cast<size_t>(nv - 1);
        require(vertex_capacity >= 3 * nverts, "cnet_tessellate: vertex buffer too small");
        require(triangles == nullptr || triangle_capacity >= 3 * ntris, "cnet_tessellate: triangle buffer too small");
        const auto grid = cnet::io::tessellate(surface->surface, nu, nv);
        for (size_t i = 0; i < nverts; ++i)
            for (size_t k = 0; k < 3; ++k)
                vertices[3 * i + k] = grid.vertices(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
        if (triangles)
            for (size_t t = 0; t < ntris; ++t)
                for (size_t k = 0; k < 3; ++k) triangles[3 * t + k] = grid.triangles[t][k];
    });
}

cnet_status cnet_cst_evaluate(double n1, double n2, const double* coefficients, size_t n_coefficients, double zeta_te,
                              double psi, double* zeta)
{
    return guarded([&] {
        require(zeta != nullptr && (coefficients != nullptr || n_coefficients == 0), "cnet_cst_evaluate: null argument");
        cnet::CstParameters p;
        p.n1 = n1;
        p.n2 = n2;
        p.coefficients.assign(coefficients, coefficients + n_coefficients);
        p.zeta_te = zeta_te;
        *zeta = cnet::cst_evaluate(p, psi);
    });
}

const char* cnet_last_error(void) { return last_error.c_str(); }

} // extern "C"
