#ifndef MOLLIFIER_H
#define MOLLIFIER_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of every fallible call. The numeric values of the first five match the
// command-line exit codes.
typedef enum MollifierStatus {
  MOLLIFIER_STATUS_OK = 0,
  MOLLIFIER_STATUS_PARSE = 2,
  MOLLIFIER_STATUS_VALIDATION = 3,
  MOLLIFIER_STATUS_EVALUATION = 4,
  MOLLIFIER_STATUS_VERIFICATION = 5,
  MOLLIFIER_STATUS_NULL_ARGUMENT = 10,
  MOLLIFIER_STATUS_INVALID_UTF8 = 11,
  MOLLIFIER_STATUS_PANIC = 99,
} MollifierStatus;

// Which identity suite [`mollifier_verify`] runs.
typedef enum MollifierSuite {
  MOLLIFIER_SUITE_COMBINATORICS = 0,
  MOLLIFIER_SUITE_VONMANGOLDT = 1,
  MOLLIFIER_SUITE_ARITH_FACTOR = 2,
  MOLLIFIER_SUITE_SUMMATION = 3,
  MOLLIFIER_SUITE_RESIDUE = 4,
  MOLLIFIER_SUITE_ALL = 5,
} MollifierSuite;

// Kind of one breakdown entry.
typedef enum MollifierTermKind {
  MOLLIFIER_TERM_KIND_C11 = 0,
  MOLLIFIER_TERM_KIND_C12 = 1,
  MOLLIFIER_TERM_KIND_C22 = 2,
} MollifierTermKind;

// Opaque parsed configuration.
typedef struct MollifierConfig MollifierConfig;

// Opaque evaluation result.
typedef struct MollifierReport MollifierReport;

typedef struct MollifierValues {
  double c11;
  double c12;
  double c22;
  double c_total;
  // `κ`, or `κ*` for a simple-zero configuration.
  double kappa;
  bool is_kappa_star;
} MollifierValues;

typedef struct MollifierTerm {
  enum MollifierTermKind kind;
  size_t l1;
  size_t l2;
  size_t k;
  double value;
} MollifierTerm;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or NULL after a success.
// The pointer stays valid until the next call into this library on the same thread.
const char *mollifier_last_error(void);

// Library version as a static NUL-terminated string.
const char *mollifier_version(void);

// Parse a TOML configuration.
//
// # Safety
// `toml` must be a NUL-terminated string and `out` a valid pointer to write to.
enum MollifierStatus mollifier_config_from_toml(const char *toml, struct MollifierConfig **out);

// Load a bundled configuration: `thm1`, `thm1_star`, `thm2` or `thm2_star`.
//
// # Safety
// `name` must be a NUL-terminated string and `out` a valid pointer to write to.
enum MollifierStatus mollifier_config_from_preset(const char *name, struct MollifierConfig **out);

// Serialize a configuration as TOML. Free the result with [`mollifier_string_free`].
//
// # Safety
// `config` must be a live handle and `out` a valid pointer to write to.
enum MollifierStatus mollifier_config_to_toml(const struct MollifierConfig *config, char **out);

// Replace `R`, re-validating the configuration.
//
// # Safety
// `config` must be a live handle not shared with another thread during the call.
enum MollifierStatus mollifier_config_set_r(struct MollifierConfig *config, double r);

// Multiply every `P_ℓ`, `ℓ ≥ 2`, by `t`.
//
// # Safety
// `config` must be a live handle not shared with another thread during the call.
enum MollifierStatus mollifier_config_scale_second_piece(struct MollifierConfig *config, double t);

// # Safety
// `config` must be NULL or a handle returned by this library that has not been freed.
void mollifier_config_free(struct MollifierConfig *config);

// Evaluate `c₁₁`, `c₁₂`, `c₂₂`, `c` and the bound.
//
// # Safety
// `config` must be a live handle and `out` a valid pointer to write to.
enum MollifierStatus mollifier_eval(const struct MollifierConfig *config,
                                    struct MollifierReport **out);

// # Safety
// `report` must be a live handle and `out` a valid pointer to write to.
enum MollifierStatus mollifier_report_values(const struct MollifierReport *report,
                                             struct MollifierValues *out);

// Number of breakdown entries, or 0 for a NULL handle.
//
// # Safety
// `report` must be NULL or a live handle.
size_t mollifier_report_term_count(const struct MollifierReport *report);

// # Safety
// `report` must be a live handle and `out` a valid pointer to write to.
enum MollifierStatus mollifier_report_term(const struct MollifierReport *report,
                                           size_t index,
                                           struct MollifierTerm *out);

// # Safety
// `report` must be NULL or a handle returned by this library that has not been freed.
void mollifier_report_free(struct MollifierReport *report);

// Maximize the bound starting from `config`. `iters` is the number of objective
// evaluations per restart. On success `*best` receives a new handle.
//
// # Safety
// `config` must be a live handle; `best` and `kappa` valid pointers to write to.
enum MollifierStatus mollifier_optimize(const struct MollifierConfig *config,
                                        size_t iters,
                                        size_t restarts,
                                        uint64_t seed,
                                        struct MollifierConfig **best,
                                        double *kappa);

// Run an identity suite. `limit = 0` selects the default sieve size. Returns
// `Verification` when any check fails; `*passed` and `*total` count the checks.
//
// # Safety
// `passed` and `total` must be valid pointers to write to.
enum MollifierStatus mollifier_verify(enum MollifierSuite suite,
                                      size_t limit,
                                      size_t *passed,
                                      size_t *total);

// # Safety
// `s` must be NULL or a string returned by this library that has not been freed.
void mollifier_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* MOLLIFIER_H */
