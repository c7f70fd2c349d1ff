#ifndef MAXZX_H
#define MAXZX_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum MzStatus {
  MZ_STATUS_OK = 0,
  MZ_STATUS_NULL_POINTER = 1,
  MZ_STATUS_INVALID_UTF8 = 2,
  MZ_STATUS_PARSE_ERROR = 3,
  MZ_STATUS_ENGINE_ERROR = 4,
  MZ_STATUS_CERTIFICATE_ERROR = 5,
  /**
   * No prime: the outcome is evidence, or the search hit its limit.
   */
  MZ_STATUS_NOT_FOUND = 6,
  MZ_STATUS_PANIC = 7,
} MzStatus;

typedef struct MzOracle MzOracle;

typedef struct MzOutcome MzOutcome;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parse an oracle specification (the text of an oracle file).
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum MzStatus mz_oracle_from_spec(const char *text, struct MzOracle **out);

/**
 * # Safety
 * `oracle` must come from [`mz_oracle_from_spec`] and not be freed yet, or be null.
 */
void mz_oracle_free(struct MzOracle *oracle);

/**
 * Force `M(key)` to `value`.
 *
 * # Safety
 * `oracle` must be a live handle and `key` a NUL-terminated string.
 */
enum MzStatus mz_oracle_set_member(struct MzOracle *oracle, const char *key, bool value);

/**
 * Force `nu(key)` to `value`.
 *
 * # Safety
 * `oracle` must be a live handle; `key` and `value` NUL-terminated strings.
 */
enum MzStatus mz_oracle_set_nu(struct MzOracle *oracle, const char *key, const char *value);

/**
 * Membership calls made through this handle; 0 for null.
 *
 * # Safety
 * `oracle` must be a live handle or null.
 */
uint64_t mz_oracle_m_calls(const struct MzOracle *oracle);

/**
 * Run the engine.
 *
 * # Safety
 * `oracle` must be a live handle and `out` a valid pointer.
 */
enum MzStatus mz_run(const struct MzOracle *oracle, struct MzOutcome **out);

/**
 * # Safety
 * `outcome` must come from [`mz_run`] and not be freed yet, or be null.
 */
void mz_outcome_free(struct MzOutcome *outcome);

/**
 * 0 for a prime, otherwise the evidence case 1 to 5; 255 for null.
 *
 * # Safety
 * `outcome` must be a live handle or null.
 */
uint8_t mz_outcome_case(const struct MzOutcome *outcome);

/**
 * The prime found, in decimal. `MZ_STATUS_NOT_FOUND` if the outcome is evidence.
 *
 * # Safety
 * `outcome` must be a live handle and `out` a valid pointer.
 */
enum MzStatus mz_outcome_prime(const struct MzOutcome *outcome, char **out);

/**
 * The verdict line, e.g. `prime: 1019` or `not-maximal: case5 a = x`.
 *
 * # Safety
 * `outcome` must be a live handle and `out` a valid pointer.
 */
enum MzStatus mz_outcome_verdict(const struct MzOutcome *outcome, char **out);

/**
 * The certificate of the run as JSON.
 *
 * # Safety
 * `outcome` must be a live handle and `out` a valid pointer.
 */
enum MzStatus mz_outcome_certificate(const struct MzOutcome *outcome, char **out);

/**
 * Check a JSON certificate against the oracle. `pass` receives the overall
 * result; `report`, if not null, receives the report as JSON. A certificate
 * that does not parse gives `MZ_STATUS_CERTIFICATE_ERROR`.
 *
 * # Safety
 * `oracle` must be a live handle, `cert_json` a NUL-terminated string,
 * `pass` a valid pointer and `report` valid or null.
 */
enum MzStatus mz_verify(const struct MzOracle *oracle,
                        const char *cert_json,
                        bool *pass,
                        char **report);

/**
 * Test primes in increasing order; `limit` 0 means no bound.
 * `MZ_STATUS_NOT_FOUND` when the limit is reached.
 *
 * # Safety
 * `oracle` must be a live handle and `out` a valid pointer.
 */
enum MzStatus mz_search(const struct MzOracle *oracle, uint64_t limit, char **out);

/**
 * # Safety
 * `s` must be a string returned by this library and not freed yet, or null.
 */
void mz_string_free(char *s);

/**
 * Message for the last failing call on this thread, or null. Valid until
 * the next call into this library on the same thread.
 */
const char *mz_last_error(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MAXZX_H */
