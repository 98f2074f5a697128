/* C interface to the beltnot library. Generated by cbindgen; do not edit. */

#ifndef BELTNOT_H
#define BELTNOT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes returned by every fallible call.
 */
typedef enum BnStatus {
  BnOk = 0,
  /**
   * A pointer argument was NULL.
   */
  BnNullPointer = 1,
  /**
   * An argument was out of range (angles, copy counts, orders).
   */
  BnInvalidArgument = 2,
  /**
   * A gate failed its unitarity checks.
   */
  BnInvalidGate = 3,
  /**
   * Input text could not be parsed.
   */
  BnParseError = 4,
  /**
   * An internal invariant failed.
   */
  BnInternalError = 5,
} BnStatus;

/**
 * Opaque handle to a sequential-generation chain.
 */
typedef struct BnChain BnChain;

/**
 * Opaque handle to a NOT-gate description.
 */
typedef struct BnGate BnGate;

/**
 * Belt constants and the optimal-gate summary for one (belt, M).
 */
typedef struct BnOptimalReport {
  double k_const;
  double p_const;
  double q_const;
  double r_const;
  /**
   * 1..4, matching the four-case classification.
   */
  uint32_t case_id;
  /**
   * The case formula's free parameter, clipped to [0, 1].
   */
  double a_star;
  /**
   * 1 when the min(·, 1) clip engaged.
   */
  uint8_t boundary_hit;
  /**
   * 1 when the case allocation attains the true optimum.
   */
  uint8_t case_optimal;
  /**
   * Optimal belt-averaged fidelity.
   */
  double f_bar;
} BnOptimalReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Belt constants K, P, Q, R for a latitude pair.
 *
 * # Safety
 * `out_k`, `out_p`, `out_q`, `out_r` must be valid writable pointers.
 */
enum BnStatus bn_belt_constants(double theta1,
                                double theta2,
                                double *out_k,
                                double *out_p,
                                double *out_q,
                                double *out_r);

/**
 * Optimal-gate report for a belt and copy count.
 *
 * # Safety
 * `out` must be a valid writable pointer.
 */
enum BnStatus bn_optimal_report(double theta1,
                                double theta2,
                                uint32_t copies,
                                struct BnOptimalReport *out);

/**
 * Realize the optimal gate for a belt. On success `*out` owns a new handle
 * that must be released with [`bn_gate_free`].
 *
 * # Safety
 * `out` must be a valid writable pointer.
 */
enum BnStatus bn_gate_realize_optimal(double theta1,
                                      double theta2,
                                      uint32_t copies,
                                      struct BnGate **out);

/**
 * Parse a gate from its JSON form. The gate is validated before a handle is
 * returned.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum BnStatus bn_gate_from_json(const char *text, struct BnGate **out);

/**
 * Serialize a gate to JSON. The returned string must be released with
 * [`bn_string_free`].
 *
 * # Safety
 * `gate` must be a live handle from this library.
 */
char *bn_gate_to_json(const struct BnGate *gate);

/**
 * Copy count of a gate handle; 0 for NULL.
 *
 * # Safety
 * `gate` must be NULL or a live handle.
 */
uint32_t bn_gate_copies(const struct BnGate *gate);

/**
 * Pointwise fidelity of a gate at one input (θ, φ) by simulation.
 *
 * # Safety
 * `gate` must be a live handle; `out` must be writable.
 */
enum BnStatus bn_gate_fidelity_sim(const struct BnGate *gate,
                                   double theta,
                                   double phi,
                                   double *out);

/**
 * Closed-form belt-averaged fidelity of a gate.
 *
 * # Safety
 * `gate` must be a live handle; `out` must be writable.
 */
enum BnStatus bn_gate_avg_fidelity_closed(const struct BnGate *gate,
                                          double theta1,
                                          double theta2,
                                          double *out);

/**
 * Quadrature belt-averaged fidelity of a gate (u_nodes ≥ 8, phi_nodes ≥ 16).
 *
 * # Safety
 * `gate` must be a live handle; `out` must be writable.
 */
enum BnStatus bn_gate_avg_fidelity_quadrature(const struct BnGate *gate,
                                              double theta1,
                                              double theta2,
                                              uint32_t u_nodes,
                                              uint32_t phi_nodes,
                                              double *out);

/**
 * Apply a gate to an input and write the joint output state as JSON.
 * The returned string must be released with [`bn_string_free`]; NULL on
 * failure.
 *
 * # Safety
 * `gate` must be a live handle.
 */
char *bn_gate_apply_json(const struct BnGate *gate, double theta, double phi);

/**
 * Release a gate handle. NULL is ignored.
 *
 * # Safety
 * `gate` must be NULL or a handle returned by this library, not yet freed.
 */
void bn_gate_free(struct BnGate *gate);

/**
 * Build the closed-form chain of the odd-M exemplar output state.
 *
 * # Safety
 * `out` must be a valid writable pointer.
 */
enum BnStatus bn_chain_exemplar(uint32_t copies, double gamma, struct BnChain **out);

/**
 * Number of sites in a chain; 0 for NULL.
 *
 * # Safety
 * `chain` must be NULL or a live handle.
 */
uint32_t bn_chain_site_count(const struct BnChain *chain);

/**
 * Bond dimension at cut `index` (0 ..= site_count).
 *
 * # Safety
 * `chain` must be a live handle; `out` must be writable.
 */
enum BnStatus bn_chain_bond_dim(const struct BnChain *chain, uint32_t index, uint32_t *out);

/**
 * Largest per-site isometry residual of a chain.
 *
 * # Safety
 * `chain` must be a live handle; `out` must be writable.
 */
enum BnStatus bn_chain_max_isometry_residual(const struct BnChain *chain, double *out);

/**
 * Verify a chain against the exemplar state with the same parameters:
 * writes the reconstruction overlap and whether the certificate passed.
 *
 * # Safety
 * `chain` must be a live handle; `out_overlap` and `out_passed` writable.
 */
enum BnStatus bn_chain_verify_exemplar(const struct BnChain *chain,
                                       uint32_t copies,
                                       double gamma,
                                       double *out_overlap,
                                       uint8_t *out_passed);

/**
 * Serialize a chain to JSON. The returned string must be released with
 * [`bn_string_free`]; NULL on failure.
 *
 * # Safety
 * `chain` must be a live handle.
 */
char *bn_chain_to_json(const struct BnChain *chain);

/**
 * Parse a chain from its JSON form.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum BnStatus bn_chain_from_json(const char *text, struct BnChain **out);

/**
 * Release a chain handle. NULL is ignored.
 *
 * # Safety
 * `chain` must be NULL or a handle returned by this library, not yet freed.
 */
void bn_chain_free(struct BnChain *chain);

/**
 * Release a string returned by this library. NULL is ignored.
 *
 * # Safety
 * `text` must be NULL or a string returned by this library, not yet freed.
 */
void bn_string_free(char *text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* BELTNOT_H */
