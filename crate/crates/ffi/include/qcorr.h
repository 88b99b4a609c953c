/* C interface for the qcorr quantum-correlation toolkit. */

#ifndef QCORR_H
#define QCORR_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call.
 */
typedef enum QcorrStatus {
  QCORR_STATUS_OK = 0,
  QCORR_STATUS_NULL_POINTER = 1,
  QCORR_STATUS_INVALID_ARGUMENT = 2,
} QcorrStatus;

/**
 * Bipartite correlation measures.
 */
typedef enum QcorrMeasure {
  QCORR_MEASURE_NEGATIVITY = 0,
  QCORR_MEASURE_CONCURRENCE = 1,
  QCORR_MEASURE_DISCORD = 2,
} QcorrMeasure;

/**
 * Opaque handle to a normalized pure state.
 */
typedef struct QcorrState QcorrState;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message describing the most recent failure on this thread.
 *
 * The pointer stays valid until the next failing call on the same thread.
 */
const char *qcorr_last_error(void);

/**
 * Library version string (static storage).
 */
const char *qcorr_version(void);

/**
 * Release a state handle. Null is ignored.
 *
 * # Safety
 * `state` must be null or a pointer returned by one of the `qcorr_state_*`
 * constructors that has not been freed yet.
 */
void qcorr_state_free(struct QcorrState *state);

/**
 * Haar-random pure state of `n` qubits for `(master_seed, sample_index)`.
 *
 * # Safety
 * `out` must be a valid pointer to a `QcorrState*` slot.
 */
enum QcorrStatus qcorr_state_haar(uint32_t n,
                                  uint64_t master_seed,
                                  uint64_t sample_index,
                                  struct QcorrState **out);

/**
 * Random three-qubit W-class state.
 *
 * # Safety
 * `out` must be a valid pointer to a `QcorrState*` slot.
 */
enum QcorrStatus qcorr_state_wclass(uint64_t master_seed,
                                    uint64_t sample_index,
                                    struct QcorrState **out);

/**
 * Random Dicke state of `n` qubits with `r` excitations.
 *
 * # Safety
 * `out` must be a valid pointer to a `QcorrState*` slot.
 */
enum QcorrStatus qcorr_state_dicke(uint32_t n,
                                   uint32_t r,
                                   uint64_t master_seed,
                                   uint64_t sample_index,
                                   struct QcorrState **out);

/**
 * Equal-coefficient Dicke state.
 *
 * # Safety
 * `out` must be a valid pointer to a `QcorrState*` slot.
 */
enum QcorrStatus qcorr_state_dicke_equal(uint32_t n, uint32_t r, struct QcorrState **out);

/**
 * `alpha|0..0> + sqrt(1 - alpha^2)|1..1>` on `n` qubits, `alpha` in (0,1).
 *
 * # Safety
 * `out` must be a valid pointer to a `QcorrState*` slot.
 */
enum QcorrStatus qcorr_state_gghz(uint32_t n, double alpha, struct QcorrState **out);

/**
 * Canonical three-qubit state from five coefficients and a phase.
 *
 * # Safety
 * `coeffs` must point to 5 readable doubles; `out` must be a valid pointer
 * to a `QcorrState*` slot.
 */
enum QcorrStatus qcorr_state_canonical3(const double *coeffs, double phi, struct QcorrState **out);

/**
 * Build a state from `len` amplitudes split into real and imaginary parts.
 * The vector must be normalized and `len` a power of two.
 *
 * # Safety
 * `re` and `im` must point to `len` readable doubles; `out` must be a valid
 * pointer to a `QcorrState*` slot.
 */
enum QcorrStatus qcorr_state_from_amplitudes(const double *re,
                                             const double *im,
                                             size_t len,
                                             struct QcorrState **out);

/**
 * Number of qubits of a state.
 *
 * # Safety
 * `state` must be a live handle; `out` must be a valid pointer.
 */
enum QcorrStatus qcorr_state_n_qubits(const struct QcorrState *state, uint32_t *out);

/**
 * Generalized geometric measure of the state.
 *
 * # Safety
 * `state` must be a live handle; `out` must be a valid pointer.
 */
enum QcorrStatus qcorr_ggm(const struct QcorrState *state, double *out);

/**
 * Monogamy score of `measure` with exponent `alpha` and the given nodal
 * qubit (1-based).
 *
 * # Safety
 * `state` must be a live handle; `out` must be a valid pointer.
 */
enum QcorrStatus qcorr_monogamy_score(const struct QcorrState *state,
                                      enum QcorrMeasure measure,
                                      double alpha,
                                      uint32_t nodal,
                                      double *out);

/**
 * Sum of the alpha-powered pairwise correlations with the nodal qubit.
 *
 * # Safety
 * `state` must be a live handle; `out` must be a valid pointer.
 */
enum QcorrStatus qcorr_bipartite_sum(const struct QcorrState *state,
                                     enum QcorrMeasure measure,
                                     double alpha,
                                     uint32_t nodal,
                                     double *out);

/**
 * Critical exponent of the state for `measure` (default grid, refined to
 * 1e-3). `out_right_censored` reports whether the scan hit the grid top.
 *
 * # Safety
 * `state` must be a live handle; `out_value` and `out_right_censored` must
 * be valid pointers.
 */
enum QcorrStatus qcorr_critical_exponent(const struct QcorrState *state,
                                         enum QcorrMeasure measure,
                                         double *out_value,
                                         bool *out_right_censored);

/**
 * Negativity-monogamy bound of the gGHZ state with GGM `g`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum QcorrStatus qcorr_gghz_bound(double g, double *out);

/**
 * Localized correlation of the pair `(qubit_i, qubit_j)` (1-based) after
 * optimized projective measurements on the remaining qubits.
 *
 * # Safety
 * `state` must be a live handle; `out` must be a valid pointer.
 */
enum QcorrStatus qcorr_localize(const struct QcorrState *state,
                                uint32_t qubit_i,
                                uint32_t qubit_j,
                                enum QcorrMeasure measure,
                                double alpha,
                                uint32_t restarts,
                                double *out);

/**
 * Localized correlation restricted to Pauli (X/Y/Z) measurement bases.
 *
 * # Safety
 * `state` must be a live handle; `out` must be a valid pointer.
 */
enum QcorrStatus qcorr_localize_pauli(const struct QcorrState *state,
                                      uint32_t qubit_i,
                                      uint32_t qubit_j,
                                      enum QcorrMeasure measure,
                                      double *out);

/**
 * Sum of localized correlations (alpha = 1) over all partners of `nodal`.
 *
 * # Safety
 * `state` must be a live handle; `out` must be a valid pointer.
 */
enum QcorrStatus qcorr_localized_sum(const struct QcorrState *state,
                                     enum QcorrMeasure measure,
                                     double alpha,
                                     uint32_t nodal,
                                     uint32_t restarts,
                                     double *out);

/**
 * Average-entropy estimate `log2(M) - M/(2K)`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum QcorrStatus qcorr_avg_entropy(uint32_t m, uint32_t k, double *out);

/**
 * Largest marginal eigenvalue with binary entropy `s`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum QcorrStatus qcorr_solve_max_eigenvalue(double s, double *out);

/**
 * Closed-form GGM of the equal-coefficient Dicke state with n/2 excitations.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum QcorrStatus qcorr_ggm_equal_dicke(uint32_t n, double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QCORR_H */
