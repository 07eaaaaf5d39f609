#ifndef DRICCI_H
#define DRICCI_H

/* C interface to the discrete-surface-of-revolution library: constant
 * curvature parametrizations, the constrained Ricci flow, file emission,
 * and the randomized invariant checker. All functions returning a
 * dricci_status leave a human-readable message in dricci_last_error()
 * on failure. Handles are opaque; destroy what you create. */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dricci_status {
  DRICCI_OK = 0,
  DRICCI_INVALID_ARGUMENT = 1,
  DRICCI_ZERO_EDGE = 2,
  DRICCI_DEGENERATE_BAND = 3,
  DRICCI_SHAPE_MISMATCH = 4,
  DRICCI_NON_PARALLEL = 5,
  DRICCI_DOMAIN_VIOLATION = 6,
  DRICCI_DEGENERATE_STEP = 7,
  DRICCI_SINGULAR_JACOBIAN = 8,
  DRICCI_STEP_FAILURE = 9,
  DRICCI_FIT_DOMAIN = 10,
  DRICCI_DIVISION_BY_ZERO = 11,
  DRICCI_PARSE_ERROR = 12,
  DRICCI_IO_ERROR = 13,
  DRICCI_UNKNOWN = 14
} dricci_status;

/* A profile curve with its normals and the rotational division count l.
 * Layer count is k+1. */
typedef struct dricci_profile dricci_profile;

/* A recorded flow: snapshot states plus per-snapshot diagnostics. */
typedef struct dricci_trace dricci_trace;

const char* dricci_version(void);

/* Message of the most recent failure on this thread; empty if none. */
const char* dricci_last_error(void);

/* --- profiles ------------------------------------------------------- */

/* family: sphere-positive | pseudosphere | cosh-negative | sinh-negative |
 *         catenoid | delaunay.
 * grid accepts "[0, 0.1, ...]", "linspace(a,b,M)", or "expr : n = lo .. hi". */
dricci_status dricci_profile_from_family(const char* family, double p, double q, double c,
                                         int eps, const char* grid, int l,
                                         dricci_profile** out);

dricci_status dricci_profile_from_json_file(const char* path, dricci_profile** out);

/* name: "sphere" (param unused) or "dumbbell" (param = pinch in [0,1)). */
dricci_status dricci_profile_fixture(const char* name, int k, int l, double param,
                                     dricci_profile** out);

void dricci_profile_destroy(dricci_profile* p);

int dricci_profile_layers(const dricci_profile* p); /* k+1 */
int dricci_profile_l(const dricci_profile* p);

/* Each array, when non-NULL, receives layers() values. */
dricci_status dricci_profile_values(const dricci_profile* p, double* f, double* h,
                                    double* a, double* b);

/* Band n in [0, k): out = {g11, g22, K, H, area}. */
dricci_status dricci_profile_face(const dricci_profile* p, int n, double out5[5]);

/* 1 when the profile carries its parameter grid (family-built profiles). */
int dricci_profile_has_grid(const dricci_profile* p);
dricci_status dricci_profile_grid(const dricci_profile* p, double* u, int* n_min);

dricci_status dricci_profile_write_obj(const dricci_profile* p, const char* path);
dricci_status dricci_profile_write_json(const dricci_profile* p, const char* path);
/* Requires a grid (columns n, u_n, f, h, a, b). */
dricci_status dricci_profile_write_csv(const dricci_profile* p, const char* path);

/* --- flow ----------------------------------------------------------- */

/* bc: pos-cone | neg-cone | pos-cusp | neg-cusp (the latter two only when
 * unnormalized == 0). Snapshots are recorded every `stride` steps. */
dricci_status dricci_flow_run(const dricci_profile* p, const char* bc, int unnormalized,
                              double dt, double t_end, int stride, dricci_trace** out);

void dricci_trace_destroy(dricci_trace* t);

int dricci_trace_snapshots(const dricci_trace* t);
int dricci_trace_stopped_early(const dricci_trace* t);
double dricci_trace_time(const dricci_trace* t, int i);
double dricci_trace_r(const dricci_trace* t, int i);
double dricci_trace_area(const dricci_trace* t, int i);

/* Snapshot i as a fresh profile handle. */
dricci_status dricci_trace_state(const dricci_trace* t, int i, dricci_profile** out);

/* Columns: t, n, f, h, a, b, K, H, A, r. */
dricci_status dricci_trace_write_csv(const dricci_trace* t, const char* path);

/* Constant-curvature fit of the final state as JSON {c, p or q, u, h_err};
 * the family is picked by the sign of the curvature ratio. Truncates to
 * cap-1 characters. */
dricci_status dricci_trace_fit_json(const dricci_trace* t, char* buf, size_t cap);

/* --- compare and check ---------------------------------------------- */

/* Discrete family vs smooth reference over refinement levels; writes the
 * CSV when csv_path is non-NULL and stores the convergence-order estimate
 * in *order_out when non-NULL. */
dricci_status dricci_compare(const char* family, double p, double q, double c, int eps,
                             double u_max, const int* levels, int n_levels,
                             const char* csv_path, double* order_out);

/* Randomized invariant suites. tol_overrides is NULL or a comma-separated
 * list "invariant=value" using the invariant names from the summary.
 * *passed is set to 1 iff every invariant held; the printable summary is
 * copied into buf (truncated to cap-1 characters). */
dricci_status dricci_check(uint64_t seed, int trials, const char* tol_overrides,
                           int* passed, char* buf, size_t cap);

#ifdef __cplusplus
}
#endif

#endif /* DRICCI_H */
