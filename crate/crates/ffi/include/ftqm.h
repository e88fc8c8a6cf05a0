#ifndef FTQM_H
#define FTQM_H

/* Generated by cbindgen. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Which Pauli component of an error pattern a syndrome is taken of.
 */
typedef enum FtqmErrorKind {
  /**
   * Bit flips, checked by the parity check of RM*.
   */
  FTQM_ERROR_KIND_X = 0,
  /**
   * Phase flips, checked by the parity check of the Hamming code.
   */
  FTQM_ERROR_KIND_Z = 1,
} FtqmErrorKind;

typedef enum FtqmProtocol {
  FTQM_PROTOCOL_IA = 0,
  FTQM_PROTOCOL_IB = 1,
  FTQM_PROTOCOL_IC = 2,
  FTQM_PROTOCOL_II = 3,
} FtqmProtocol;

typedef enum FtqmRate {
  FTQM_RATE_X_PASS = 0,
  FTQM_RATE_Z_PASS = 1,
  FTQM_RATE_X_ERR = 2,
  FTQM_RATE_Z_ERR = 3,
} FtqmRate;

typedef enum FtqmStatus {
  FTQM_STATUS_OK = 0,
  FTQM_STATUS_NULL_POINTER = 1,
  FTQM_STATUS_INVALID_PARAMETER = 2,
  FTQM_STATUS_LENGTH_MISMATCH = 3,
  FTQM_STATUS_NON_CONVERGENT = 4,
  FTQM_STATUS_NO_POSITIVE_THRESHOLD = 5,
  FTQM_STATUS_ENUMERATION_TOO_LARGE = 6,
  FTQM_STATUS_BUFFER_TOO_SMALL = 7,
  FTQM_STATUS_INTERNAL = 99,
} FtqmStatus;

/**
 * QRM(1,m) code. Create with [`ftqm_code_new`], release with [`ftqm_code_free`].
 */
typedef struct FtqmCode FtqmCode;

/**
 * Estimation configuration. Starts noiseless with derived repetitions.
 */
typedef struct FtqmEstimator FtqmEstimator;

/**
 * Summary of one run. Digits are returned separately.
 */
typedef struct FtqmRunResult {
  double phi_hat;
  /**
   * Number of digits decided.
   */
  size_t digits;
  /**
   * 1-based index of the bit at which the run aborted, 0 if it completed.
   */
  size_t aborted_at;
  uint64_t interrogations_used;
  uint64_t interrogations_full;
  uint64_t retransmissions;
} FtqmRunResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *ftqm_version(void);

/**
 * Copies the calling thread's last error message into `buf`, truncating
 * to `len - 1` bytes and NUL-terminating. Returns the full message length
 * without the terminator, or 0 when there is no message. `buf` may be null
 * to query the length.
 *
 * # Safety
 * `buf` must be null or point to `len` writable bytes.
 */
size_t ftqm_last_error_message(char *buf, size_t len);

/**
 * # Safety
 * `out` must be a valid pointer to a handle slot.
 */
enum FtqmStatus ftqm_code_new(uint32_t m, struct FtqmCode **out);

/**
 * # Safety
 * `code` must be null or a handle from [`ftqm_code_new`] not yet freed.
 */
void ftqm_code_free(struct FtqmCode *code);

/**
 * Number of physical qubits, `2^m - 1`.
 *
 * # Safety
 * `code` must be a live handle.
 */
enum FtqmStatus ftqm_code_n(const struct FtqmCode *code, size_t *out);

/**
 * Number of syndrome bits for errors of `kind`, an `FtqmErrorKind` value.
 *
 * # Safety
 * `code` must be a live handle.
 */
enum FtqmStatus ftqm_code_syndrome_len(const struct FtqmCode *code, int32_t kind, size_t *out);

/**
 * Syndrome of an error pattern given as `n` bytes of 0 or 1. Writes one
 * byte per syndrome bit into `syndrome_out`, which must hold at least
 * [`ftqm_code_syndrome_len`] bytes.
 *
 * # Safety
 * `error` must point to `error_len` readable bytes and `syndrome_out` to
 * `syndrome_cap` writable bytes.
 */
enum FtqmStatus ftqm_code_syndrome(const struct FtqmCode *code,
                                   int32_t kind,
                                   const uint8_t *error,
                                   size_t error_len,
                                   uint8_t *syndrome_out,
                                   size_t syndrome_cap);

/**
 * `protocol` takes an `FtqmProtocol` value.
 *
 * # Safety
 * `out` must be a valid pointer to a handle slot.
 */
enum FtqmStatus ftqm_estimator_new(int32_t protocol,
                                   double gamma,
                                   uint32_t t,
                                   double epsilon,
                                   struct FtqmEstimator **out);

/**
 * # Safety
 * `e` must be null or a handle from [`ftqm_estimator_new`] not yet freed.
 */
void ftqm_estimator_free(struct FtqmEstimator *e);

/**
 * Fixes the repetitions per bit; 0 restores the value derived from epsilon.
 *
 * # Safety
 * `e` must be a live handle.
 */
enum FtqmStatus ftqm_estimator_set_repetitions(struct FtqmEstimator *e, uint64_t m);

/**
 * Pauli channel with total rate `p` split as `px : py : pz` (summing to 1).
 *
 * # Safety
 * `e` must be a live handle.
 */
enum FtqmStatus ftqm_estimator_set_noise(struct FtqmEstimator *e,
                                         double p,
                                         double px,
                                         double py,
                                         double pz);

/**
 * Device error rate `p_prime`; a negative value removes device noise.
 *
 * # Safety
 * `e` must be a live handle.
 */
enum FtqmStatus ftqm_estimator_set_device_noise(struct FtqmEstimator *e, double p_prime);

/**
 * Nonzero uses the exact X and Z marginals of the channel for encoded flip
 * probabilities; zero (the default) uses the total rate as an upper bound.
 *
 * # Safety
 * `e` must be a live handle.
 */
enum FtqmStatus ftqm_estimator_set_exact_rates(struct FtqmEstimator *e, int32_t exact);

/**
 * Runs the estimator once on `phi` in `[0, π)`. Run `run` of `seed` draws
 * from the same streams as the command-line tool. Up to `digits_cap`
 * decided digits are copied into `digits_out` (may be null when the cap is
 * 0); for protocol II the matching radices go to `radices_out` (may be null).
 *
 * # Safety
 * `e` must be a live handle; `digits_out` and `radices_out` must be null or
 * point to `digits_cap` writable bytes.
 */
enum FtqmStatus ftqm_estimator_run(const struct FtqmEstimator *e,
                                   double phi,
                                   uint64_t seed,
                                   uint64_t run,
                                   struct FtqmRunResult *out,
                                   uint8_t *digits_out,
                                   uint8_t *radices_out,
                                   size_t digits_cap);

/**
 * Fraction of `runs` independent runs that recover `phi`: the first `t`
 * bits for the binary protocols, `|phi_hat - phi|` below the final
 * resolution for protocol II. Aborted runs count as failures.
 *
 * # Safety
 * `e` must be a live handle.
 */
enum FtqmStatus ftqm_estimator_success_rate(const struct FtqmEstimator *e,
                                            double phi,
                                            uint64_t seed,
                                            uint64_t runs,
                                            double *out);

/**
 * Decision margin `δ(γ)`; `gamma <= 0` selects the mixed-radix margin.
 */
enum FtqmStatus ftqm_delta(double gamma, double *out);

/**
 * Pass or error probability of one QRM(1,m) detection round at bare rate
 * `p`; `which` takes an `FtqmRate` value.
 */
enum FtqmStatus ftqm_detection_rate(int32_t which, double p, uint32_t m, double *out);

/**
 * Threshold of the unencoded estimator with `t` bits.
 */
enum FtqmStatus ftqm_threshold_ia(double gamma, uint32_t t, double *out);

/**
 * Threshold of encoded bit `j` with an ideal device.
 */
enum FtqmStatus ftqm_threshold_ib(double gamma, uint32_t j, double *out);

/**
 * Threshold of encoded bit `j` at device error rate `p_prime`, with
 * (`fault_tolerant != 0`) or without fault-tolerant preparation.
 */
enum FtqmStatus ftqm_threshold_device(double gamma,
                                      uint32_t j,
                                      double p_prime,
                                      int32_t fault_tolerant,
                                      double *out);

/**
 * Relative phase acquired by the logical state when every qubit of
 * QRM(1,m) is rotated by `phi`.
 */
enum FtqmStatus ftqm_logical_shift(double phi, uint32_t m, double *out);

/**
 * Expected interrogations to learn `t` digits with confidence `1 - epsilon`;
 * `protocol` takes an `FtqmProtocol` value.
 *
 * Protocol II ignores `gamma` and reads `t` radices (each 2 or 3) from
 * `radices`; a null `radices` means all 3s. The other protocols ignore
 * `radices`. Protocol Ic has no closed form here and is rejected.
 *
 * # Safety
 * `radices` must be null or point to `radices_len` readable bytes.
 */
enum FtqmStatus ftqm_resources(int32_t protocol,
                               double gamma,
                               uint32_t t,
                               double epsilon,
                               double p,
                               const uint8_t *radices,
                               size_t radices_len,
                               double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* FTQM_H */
