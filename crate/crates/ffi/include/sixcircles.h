#ifndef SIXCIRCLES_H
#define SIXCIRCLES_H

/* Generated by cbindgen; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum {
  SC_STATUS_OK = 0,
  SC_STATUS_NULL_ARGUMENT = 1,
  SC_STATUS_INVALID_ARGUMENT = 2,
  SC_STATUS_NON_POSITIVE_SIDE = 3,
  SC_STATUS_TRIANGLE_INEQUALITY = 4,
  SC_STATUS_NOT_CONSTRUCTIBLE = 5,
  SC_STATUS_NO_CONVERGENCE = 6,
  SC_STATUS_MAP_DOMAIN = 7,
  SC_STATUS_INDEX_OUT_OF_RANGE = 8,
} ScStatus;

typedef enum {
  SC_POLICY_SMALLER = 0,
  SC_POLICY_LARGER = 1,
  SC_POLICY_RANDOM = 2,
} ScPolicy;

typedef enum {
  SC_TERMINATION_MAX_STEPS = 0,
  SC_TERMINATION_CYCLE_DETECTED = 1,
  SC_TERMINATION_NOT_CONSTRUCTIBLE = 2,
  SC_TERMINATION_DEGENERATE_CIRCLE = 3,
} ScTermination;

typedef struct ScChain ScChain;

typedef struct ScTriangle ScTriangle;

/**
 * One chain element. `phi` is NaN when the angle coordinate is undefined;
 * `choice` and `sign_case` are -1 on the initial circle, otherwise
 * 0 = smaller / plus-on-side and 1 = larger / minus-on-extension.
 */
typedef struct {
  uint32_t vertex;
  double radius;
  double u;
  double phi;
  double center_x;
  double center_y;
  int32_t choice;
  int32_t sign_case;
} ScStep;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Builds a triangle from side lengths (side i opposite vertex i).
 *
 * # Safety
 * `out` must point to writable storage for one pointer.
 */
ScStatus sc_triangle_new(double a1, double a2, double a3, ScTriangle **out);

/**
 * # Safety
 * `t` must come from `sc_triangle_new` and not have been freed.
 */
void sc_triangle_free(ScTriangle *t);

/**
 * # Safety
 * `t` must be a live triangle handle; `out` must hold one f64.
 */
ScStatus sc_triangle_semiperimeter(const ScTriangle *t, double *out);

/**
 * # Safety
 * `t` must be a live triangle handle; `out` must hold three f64.
 */
ScStatus sc_triangle_half_angles(const ScTriangle *t, double *out);

/**
 * # Safety
 * `t` must be a live triangle handle; `out` must hold three f64.
 */
ScStatus sc_triangle_betas(const ScTriangle *t, double *out);

/**
 * # Safety
 * `t` must be a live triangle handle; `out` must hold three f64.
 */
ScStatus sc_triangle_couplings(const ScTriangle *t, double *out);

/**
 * # Safety
 * `t` must be a live triangle handle; `out` must hold three f64.
 */
ScStatus sc_triangle_tangent_lengths(const ScTriangle *t, double *out);

/**
 * Canonical embedding, six doubles `x1, y1, x2, y2, x3, y3`.
 *
 * # Safety
 * `t` must be a live triangle handle; `out` must hold six f64.
 */
ScStatus sc_triangle_vertices(const ScTriangle *t, double *out);

/**
 * Scaled interval-map parameters `(a, b)` of the triangle's triple-step map.
 *
 * # Safety
 * `t` must be a live triangle handle; `out_a` and `out_b` hold one f64 each.
 */
ScStatus sc_triangle_map_params(const ScTriangle *t, double *out_a, double *out_b);

/**
 * Radii of the unique pairwise tangent triple, circle k in angle k.
 *
 * # Safety
 * `t` must be a live triangle handle; `out` must hold three f64.
 */
ScStatus sc_malfatti_radii(const ScTriangle *t, double *out);

/**
 * Runs a chain whose first circle has angle coordinate `phi0` at the 1-based
 * `start_vertex`.
 *
 * # Safety
 * `t` must be a live triangle handle; `out` must hold one pointer.
 */
ScStatus sc_chain_run_phi(const ScTriangle *t,
                          uint32_t start_vertex,
                          double phi0,
                          ScPolicy policy,
                          uint64_t seed,
                          uintptr_t max_steps,
                          ScChain **out);

/**
 * Runs a chain whose first circle has radius `r0` at the 1-based
 * `start_vertex`.
 *
 * # Safety
 * `t` must be a live triangle handle; `out` must hold one pointer.
 */
ScStatus sc_chain_run_radius(const ScTriangle *t,
                             uint32_t start_vertex,
                             double r0,
                             ScPolicy policy,
                             uint64_t seed,
                             uintptr_t max_steps,
                             ScChain **out);

/**
 * # Safety
 * `c` must come from a chain constructor and not have been freed.
 */
void sc_chain_free(ScChain *c);

/**
 * Number of circles in the chain, including the initial one.
 *
 * # Safety
 * `c` must be a live chain handle.
 */
uintptr_t sc_chain_len(const ScChain *c);

/**
 * # Safety
 * `c` must be a live chain handle.
 */
ScTermination sc_chain_termination(const ScChain *c);

/**
 * Circles before the first cycle element, or -1 when no cycle was detected.
 *
 * # Safety
 * `c` must be a live chain handle.
 */
int64_t sc_chain_pre_period(const ScChain *c);

/**
 * Cycle length in chain steps, or -1 when no cycle was detected.
 *
 * # Safety
 * `c` must be a live chain handle.
 */
int64_t sc_chain_period(const ScChain *c);

/**
 * Copies the 0-based `index`-th chain element into `out`.
 *
 * # Safety
 * `c` must be a live chain handle; `out` must hold one `ScStep`.
 */
ScStatus sc_chain_step(const ScChain *c, uintptr_t index, ScStep *out);

/**
 * Evaluates the interval map `f(x) = |||x-1|-a|-b|` after validating
 * `1 <= a <= b < a+1`.
 *
 * # Safety
 * `out` must hold one f64.
 */
ScStatus sc_map_eval(double a, double b, double x, double *out);

/**
 * Fixed point `(1 + b - a) / 2` of the interval map.
 *
 * # Safety
 * `out` must hold one f64.
 */
ScStatus sc_map_fixed_point(double a, double b, double *out);

/**
 * Pre-period and period (1 or 2) of the orbit of `x0`.
 *
 * # Safety
 * `out_pre_period` and `out_period` must each hold one value.
 */
ScStatus sc_map_orbit(double a,
                      double b,
                      double x0,
                      uintptr_t max_iter,
                      uintptr_t *out_pre_period,
                      uint32_t *out_period);

/**
 * Version of the underlying library as a static NUL-terminated string.
 */
const char *sc_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SIXCIRCLES_H */
