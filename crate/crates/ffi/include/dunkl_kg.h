#ifndef DUNKL_KG_H
#define DUNKL_KG_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes shared by all entry points.
 */
typedef enum DkgStatus {
  DKG_STATUS_OK = 0,
  DKG_STATUS_INVALID_ARGUMENT = 1,
  DKG_STATUS_NULL_POINTER = 2,
  DKG_STATUS_LENGTH_MISMATCH = 3,
  /**
   * No initial data has been attached to the solver yet.
   */
  DKG_STATUS_NO_DATA = 4,
  DKG_STATUS_NUMERICAL = 5,
  DKG_STATUS_PANIC = 6,
} DkgStatus;

/**
 * Opaque solver: a radial grid, its Dunkl transform and optional Cauchy data.
 */
typedef struct DkgSolver DkgSolver;

/**
 * Energies at one instant.
 */
typedef struct DkgEnergies {
  double t;
  double kinetic;
  double potential;
  double total;
  double conserved;
  double l2;
} DkgEnergies;

/**
 * Predicted large-time limits. `strichartz_bound` may be `+inf`.
 */
typedef struct DkgLimits {
  double k_inf;
  double p_inf;
  double e_inf;
  double l2_inf;
  double strichartz_bound;
} DkgLimits;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the last failure on this thread, or an empty string.
 *
 * The pointer stays valid until the next call into this library on the same thread.
 */
const char *dkg_last_error(void);

/**
 * Static description of a status code.
 */
const char *dkg_status_message(enum DkgStatus status);

/**
 * Bessel function of the first kind `J_nu(x)` for `x > 0`.
 *
 * # Safety
 * `out` must be null or point to writable storage for one `double`.
 */
enum DkgStatus dkg_bessel_j(double nu, double x, double *out);

/**
 * Normalized Bessel function `j_alpha(x)` with `j_alpha(0) = 1`.
 *
 * # Safety
 * `out` must be null or point to writable storage for one `double`.
 */
enum DkgStatus dkg_normalized_bessel(double alpha, double x, double *out);

/**
 * Builds a solver for dimension `n`, multiplicity `gamma` on `[0, rmax]`
 * with `nodes` Gauss-Legendre nodes.
 *
 * # Safety
 * `out` must be null or point to writable storage for one pointer.
 */
enum DkgStatus dkg_solver_new(uint32_t n,
                              double gamma,
                              double rmax,
                              size_t nodes,
                              struct DkgSolver **out);

/**
 * Releases a solver. Null is ignored.
 *
 * # Safety
 * `solver` must be null or come from [`dkg_solver_new`] and not be freed twice.
 */
void dkg_solver_free(struct DkgSolver *solver);

/**
 * Number of radial nodes, or 0 for a null handle.
 *
 * # Safety
 * `solver` must be null or a live handle.
 */
size_t dkg_solver_len(const struct DkgSolver *solver);

/**
 * Copies the radial nodes into `out[0..len]`.
 *
 * # Safety
 * `solver` must be a live handle and `out` must hold `len` doubles.
 */
enum DkgStatus dkg_solver_nodes(const struct DkgSolver *solver, double *out, size_t len);

/**
 * Attaches real initial data sampled at the nodes: `position` is `u(., 0)`,
 * `velocity` is `d_t u(., 0)`, and `mass` must be positive.
 *
 * # Safety
 * `solver` must be a live handle; `position` and `velocity` must hold `len` doubles.
 */
enum DkgStatus dkg_solver_set_data(struct DkgSolver *solver,
                                   const double *position,
                                   const double *velocity,
                                   size_t len,
                                   double mass);

/**
 * Writes `u(., t)` at the nodes. `out_im` may be null.
 *
 * # Safety
 * `solver` must be a live handle; `out_re` (and `out_im` if not null) must hold `len` doubles.
 */
enum DkgStatus dkg_solve(const struct DkgSolver *solver,
                         double t,
                         double *out_re,
                         double *out_im,
                         size_t len);

/**
 * Writes `d_t u(., t)` at the nodes. `out_im` may be null.
 *
 * # Safety
 * Same contract as [`dkg_solve`].
 */
enum DkgStatus dkg_solve_dt(const struct DkgSolver *solver,
                            double t,
                            double *out_re,
                            double *out_im,
                            size_t len);

/**
 * Spectral forward transform of real samples `input[0..len]`.
 *
 * # Safety
 * `solver` must be a live handle; `input` and `out_re` (and `out_im` if not null) must hold `len` doubles.
 */
enum DkgStatus dkg_forward(const struct DkgSolver *solver,
                           const double *input,
                           double *out_re,
                           double *out_im,
                           size_t len);

/**
 * Kinetic, potential, total and conserved energies at time `t`.
 *
 * # Safety
 * `solver` must be a live handle and `out` writable.
 */
enum DkgStatus dkg_energies(const struct DkgSolver *solver, double t, struct DkgEnergies *out);

/**
 * Predicted `t -> infinity` limits of the energies and of `||u||^2`.
 *
 * # Safety
 * `solver` must be a live handle and `out` writable.
 */
enum DkgStatus dkg_predict_limits(const struct DkgSolver *solver, struct DkgLimits *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* DUNKL_KG_H */
