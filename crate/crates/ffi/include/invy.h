/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef INVY_H
#define INVY_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum InvyStatus {
  INVY_STATUS_OK = 0,
  INVY_STATUS_NULL_POINTER = 1,
  INVY_STATUS_INVALID_PARAMS = 2,
  INVY_STATUS_INVALID_ARGUMENT = 3,
  INVY_STATUS_BUFFER_TOO_SMALL = 4,
  /**
   * The dynamics failed (degenerate spectrum, integrator step, ...).
   */
  INVY_STATUS_NUMERICAL = 5,
  INVY_STATUS_PANIC = 6,
} InvyStatus;

/**
 * Evolved state; opaque to C.
 */
typedef struct InvyTrajectory InvyTrajectory;

/**
 * Model inputs. Rates are in units of λ; `cutoff = 0` selects the photon
 * cutoff automatically from `n_bar` and `k`.
 */
typedef struct InvyParams {
  double lambda[4];
  double mu;
  double delta1;
  double delta3;
  double delta4;
  double chi;
  uint32_t k;
  double n_bar;
  size_t cutoff;
  bool time_independent;
  bool renormalize;
} InvyParams;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Fill `out` with default parameters for mean photon number `n_bar` and
 * photon multiplicity `k`.
 */
enum InvyStatus invy_params_default(double n_bar, uint32_t k, struct InvyParams *out);

/**
 * Evolve the initial coherent state over `times[0..n_times]` (ascending,
 * starting at 0). On success `*out` owns a new trajectory.
 */
enum InvyStatus invy_evolve(const struct InvyParams *params,
                            const double *times,
                            size_t n_times,
                            struct InvyTrajectory **out);

/**
 * Release a trajectory. Null is ignored.
 */
void invy_trajectory_free(struct InvyTrajectory *traj);

/**
 * Number of time points; 0 for a null handle.
 */
size_t invy_trajectory_len(const struct InvyTrajectory *traj);

/**
 * Photon cutoff actually used (after automatic selection).
 */
size_t invy_trajectory_cutoff(const struct InvyTrajectory *traj);

/**
 * W(τ) at every time point.
 */
enum InvyStatus invy_inversion(const struct InvyTrajectory *traj, double *out, size_t len);

/**
 * Total norm at every time point.
 */
enum InvyStatus invy_norm_history(const struct InvyTrajectory *traj, double *out, size_t len);

/**
 * Level populations P_1..P_5, five values per time point, row-major.
 */
enum InvyStatus invy_level_populations(const struct InvyTrajectory *traj, double *out, size_t len);

/**
 * P(θ) at time point `index` on `grid` angles spanning [−π, π]; `theta`
 * may be null.
 */
enum InvyStatus invy_phase_distribution(const struct InvyTrajectory *traj,
                                        size_t index,
                                        size_t grid,
                                        double *theta,
                                        double *p);

/**
 * Phase variance at every time point.
 */
enum InvyStatus invy_phase_variance(const struct InvyTrajectory *traj, double *out, size_t len);

/**
 * Real roots, ascending, of ζ⁴ + a[0]ζ³ + a[1]ζ² + a[2]ζ + a[3].
 */
enum InvyStatus invy_solve_quartic(const double *a, double *roots);

/**
 * Copy the calling thread's last error message (NUL-terminated, truncated
 * to fit) into `buf`. Returns the full message length excluding the NUL,
 * so a return value ≥ `len` means truncation.
 */
size_t invy_last_error_message(char *buf, size_t len);

/**
 * Library version as a static NUL-terminated string.
 */
const char *invy_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* INVY_H */
