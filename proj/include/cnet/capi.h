/* Flat C interface: opaque surface handles, plain arrays, status codes. */
#ifndef CNET_CAPI_H
#define CNET_CAPI_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct cnet_surface cnet_surface;

typedef enum cnet_status {
    CNET_OK = 0,
    CNET_ERR_INVALID_ARGUMENT = 1,
    CNET_ERR_DOMAIN = 2,
    CNET_ERR_NUMERIC = 3,
    CNET_ERR_NETWORK = 4,
    CNET_ERR_AMBIGUITY = 5,
    CNET_ERR_REPARAMETRIZATION = 6,
    CNET_ERR_GRAPH = 7,
    CNET_ERR_PARSE = 8,
    CNET_ERR_VALIDATION = 9,
    CNET_ERR_IO = 10,
    CNET_ERR_INTERNAL = 99
} cnet_status;

/* Parses a network document (NUL-terminated JSON) and builds its Gordon surface.
   On success *out owns a new handle; release it with cnet_surface_free. */
cnet_status cnet_build_gordon(const char* document, cnet_surface** out);

/* Reads a surface document (as written by `cnet gordon --surface-out`). */
cnet_status cnet_surface_from_json(const char* document, cnet_surface** out);

void cnet_surface_free(cnet_surface* surface);

/* xyz receives 3 doubles. */
cnet_status cnet_evaluate(const cnet_surface* surface, double u, double v, double* xyz);

/* vertices: nu*nv*3 doubles, vertex index j*nu + i.
   triangles: 2*(nu-1)*(nv-1)*3 zero-based indices, may be NULL.
   Capacities are element counts; too small a buffer is an invalid argument. */
cnet_status cnet_tessellate(const cnet_surface* surface, int nu, int nv, double* vertices, size_t vertex_capacity,
                            int* triangles, size_t triangle_capacity);

cnet_status cnet_cst_evaluate(double n1, double n2, const double* coefficients, size_t n_coefficients, double zeta_te,
                              double psi, double* zeta);

/* Message of the last failed call on this thread; empty string if none. */
const char* cnet_last_error(void);

#ifdef __cplusplus
}
#endif

#endif
