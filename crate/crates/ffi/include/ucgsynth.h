/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#ifndef UCGSYNTH_H
#define UCGSYNTH_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result codes of every fallible call.
 */
typedef enum UcgStatus {
  UCG_STATUS_OK = 0,
  UCG_STATUS_NULL_POINTER = 1,
  UCG_STATUS_INVALID_ARGUMENT = 2,
  /**
   * Malformed JSON, wrong file kind or bad UTF-8.
   */
  UCG_STATUS_INPUT_ERROR = 3,
  /**
   * Above the simulation qubit cap.
   */
  UCG_STATUS_RESOURCE_CAP = 4,
  UCG_STATUS_UNSUPPORTED = 5,
  UCG_STATUS_INTERNAL = 6,
} UcgStatus;

/**
 * Opaque circuit handle.
 */
typedef struct UcgCircuit UcgCircuit;

/**
 * Gate counts and ASAP depths of a circuit.
 */
typedef struct UcgStats {
  size_t qubits;
  size_t count_cnot;
  size_t count_rot;
  size_t count_cu;
  size_t count_u;
  size_t count_clifford;
  size_t depth_total;
  size_t depth_cnot;
  size_t layers_rot;
  size_t layers_cu;
} UcgStats;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Synthesizes a seeded random instance.
 *
 * `kind` is one of `rucg`, `krucg`, `diag`, `kdiag`, `qaoa`; `method` one
 * of `size`, `depth`, `brute`, `baseline`. `k = 0` picks the default
 * weight bound. On success `*out` owns a new circuit.
 *
 * # Safety
 * `kind` and `method` must be NUL-terminated strings and `out` a valid
 * pointer.
 */
enum UcgStatus ucg_synth_random(const char *kind,
                                const char *method,
                                size_t n,
                                size_t k,
                                double gamma,
                                uint64_t seed,
                                struct UcgCircuit **out);

/**
 * Synthesizes the problem in a target-vector or gate-list JSON document.
 *
 * # Safety
 * String arguments must be NUL-terminated and `out` a valid pointer.
 */
enum UcgStatus ucg_synth_json(const char *kind,
                              const char *method,
                              const char *problem_json,
                              size_t k,
                              double gamma,
                              struct UcgCircuit **out);

/**
 * Parses and validates a circuit JSON document.
 *
 * # Safety
 * `json` must be NUL-terminated and `out` a valid pointer.
 */
enum UcgStatus ucg_circuit_from_json(const char *json, struct UcgCircuit **out);

/**
 * Releases a circuit; null is ignored.
 *
 * # Safety
 * `c` must come from this library and not be used afterwards.
 */
void ucg_circuit_free(struct UcgCircuit *c);

/**
 * # Safety
 * `c` must be a live circuit and `out` a valid pointer.
 */
enum UcgStatus ucg_circuit_stats(const struct UcgCircuit *c, struct UcgStats *out);

/**
 * Circuit JSON; release with `ucg_string_free`.
 *
 * # Safety
 * `c` must be a live circuit and `out` a valid pointer.
 */
enum UcgStatus ucg_circuit_to_json(const struct UcgCircuit *c, char **out);

/**
 * QASM-like text; release with `ucg_string_free`.
 *
 * # Safety
 * `c` must be a live circuit and `out` a valid pointer.
 */
enum UcgStatus ucg_circuit_to_qasm(const struct UcgCircuit *c, char **out);

/**
 * Releases a string returned by this library; null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void ucg_string_free(char *s);

/**
 * Checks a circuit against the operator described by a problem JSON
 * document, up to global phase.
 *
 * A mismatch is not an error: the call returns `Ok` with
 * `*equivalent = false`. `deviation` may be null.
 *
 * # Safety
 * `c` must be a live circuit, `problem_json` NUL-terminated and
 * `equivalent` a valid pointer.
 */
enum UcgStatus ucg_verify_json(const struct UcgCircuit *c,
                               const char *problem_json,
                               double tol,
                               bool *equivalent,
                               double *deviation);

/**
 * Message of the last failed call on this thread, or an empty string.
 * The pointer stays valid until the next failing call on this thread.
 */
const char *ucg_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *ucg_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* UCGSYNTH_H */
