#ifndef STARPROD_H
#define STARPROD_H

/* Generated by cbindgen from src/lib.rs; do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum SpStatus {
  SP_STATUS_OK = 0,
  SP_STATUS_NULL_POINTER = 1,
  SP_STATUS_INVALID_ARGUMENT = 2,
  SP_STATUS_FIELD = 3,
  SP_STATUS_DIMENSION = 4,
  SP_STATUS_SIZE_GUARD = 5,
  SP_STATUS_PRECONDITION = 6,
  SP_STATUS_PARSE = 7,
  SP_STATUS_REJECTION_CAP = 8,
  SP_STATUS_BUFFER_TOO_SMALL = 9,
  SP_STATUS_INTERNAL = 10,
} SpStatus;

typedef enum SpModel {
  SP_MODEL_L = 0,
  SP_MODEL_R1 = 1,
  SP_MODEL_FS = 2,
  SP_MODEL_FR = 3,
} SpModel;

typedef enum SpTarget {
  SP_TARGET_SPAN = 0,
  SP_TARGET_DEPENDENCE = 1,
  SP_TARGET_DEFICIT = 2,
  SP_TARGET_DMAX = 3,
  SP_TARGET_HISTOGRAM = 4,
} SpTarget;

/**
 * Exact rank-walk kernel.
 */
typedef struct SpChain SpChain;

/**
 * A linear code.
 */
typedef struct SpCode SpCode;

typedef struct SpDistinguish {
  size_t n;
  size_t k;
  size_t square_dim;
  size_t expected;
  size_t deficit;
  bool structured;
} SpDistinguish;

/**
 * Bound endpoints rounded to `double`.
 */
typedef struct SpBound {
  double lo;
  double hi;
  bool vacuous;
  bool asserted;
} SpBound;

typedef struct SpConfig {
  uint64_t q;
  uint32_t k;
  uint32_t l;
  uint32_t n;
  enum SpModel model;
  enum SpTarget target;
  /**
   * Used by `SpTarget::Deficit`.
   */
  uint32_t deficit;
  uint64_t trials;
  uint64_t seed;
  /**
   * Worker threads; 0 uses the global pool.
   */
  uint32_t threads;
} SpConfig;

typedef struct SpEstimate {
  uint64_t successes;
  uint64_t trials;
  double estimate;
  double ci_low;
  double ci_high;
  bool has_bound;
  struct SpBound bound;
  bool in_param_space;
  bool violated;
} SpEstimate;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failed call on this thread. Valid until the next
 * failing call on the same thread; never null.
 */
const char *sp_last_error(void);

/**
 * Crate version as a static NUL-terminated string.
 */
const char *sp_version(void);

/**
 * Builds the code spanned by the rows of a `rows x cols` row-major matrix of
 * canonical field values.
 *
 * # Safety
 * `values` must point to `rows * cols` readable integers; `out` must be
 * writable.
 */
enum SpStatus sp_code_from_values(uint64_t q,
                                  size_t rows,
                                  size_t cols,
                                  const uint32_t *values,
                                  struct SpCode **out);

/**
 * Parses a generator matrix file held in a NUL-terminated string.
 *
 * # Safety
 * `text` must be a valid C string; `out` must be writable.
 */
enum SpStatus sp_code_parse(const char *text, struct SpCode **out);

/**
 * Reed-Solomon `[n, k]` code evaluated at `0, 1, ..., n-1`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SpStatus sp_code_reed_solomon(uint64_t q, size_t k, size_t n, struct SpCode **out);

/**
 * Simplex code of dimension `k`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SpStatus sp_code_simplex(uint64_t q, size_t k, struct SpCode **out);

/**
 * Releases a code; null is ignored.
 *
 * # Safety
 * `code` must come from this library and not be used afterwards.
 */
void sp_code_free(struct SpCode *code);

/**
 * Length, or 0 for null.
 *
 * # Safety
 * `code` must be null or valid.
 */
size_t sp_code_length(const struct SpCode *code);

/**
 * Dimension, or 0 for null.
 *
 * # Safety
 * `code` must be null or valid.
 */
size_t sp_code_dim(const struct SpCode *code);

/**
 * Field order, or 0 for null.
 *
 * # Safety
 * `code` must be null or valid.
 */
uint64_t sp_code_field_order(const struct SpCode *code);

/**
 * Copies the reduced row echelon basis, `dim x length` row-major.
 *
 * # Safety
 * `buf` must hold `len` integers.
 */
enum SpStatus sp_code_basis(const struct SpCode *code, uint32_t *buf, size_t len);

/**
 * Writes the code in generator matrix file format.
 *
 * # Safety
 * `buf` must hold `len` bytes; `needed` may be null.
 */
enum SpStatus sp_code_write(const struct SpCode *code, char *buf, size_t len, size_t *needed);

/**
 * Whether two codes are equal as subspaces.
 *
 * # Safety
 * Pointers must be valid.
 */
enum SpStatus sp_code_equal(const struct SpCode *a, const struct SpCode *b, bool *out);

/**
 * Componentwise product code `a * b`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum SpStatus sp_code_star_product(const struct SpCode *a,
                                   const struct SpCode *b,
                                   struct SpCode **out);

/**
 * `s`-th componentwise power, `s >= 1`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum SpStatus sp_code_star_power(const struct SpCode *code, size_t s, struct SpCode **out);

/**
 * Dual code.
 *
 * # Safety
 * Pointers must be valid.
 */
enum SpStatus sp_code_dual(const struct SpCode *code, struct SpCode **out);

/**
 * Minimum distance of a nonzero code.
 *
 * # Safety
 * Pointers must be valid.
 */
enum SpStatus sp_code_dmin(const struct SpCode *code, size_t *out);

/**
 * Largest codeword weight of a nonzero code.
 *
 * # Safety
 * Pointers must be valid.
 */
enum SpStatus sp_code_dmax(const struct SpCode *code, size_t *out);

/**
 * Number of codewords of each weight `0..=length`; `buf` needs
 * `length + 1` slots.
 *
 * # Safety
 * `buf` must hold `len` integers.
 */
enum SpStatus sp_code_weight_enumerator(const struct SpCode *code, uint64_t *buf, size_t len);

/**
 * Square-code distinguisher.
 *
 * # Safety
 * Pointers must be valid.
 */
enum SpStatus sp_distinguish(const struct SpCode *code, struct SpDistinguish *out);

/**
 * Builds the exact rank-walk kernel for `k x l` matrices.
 *
 * # Safety
 * `out` must be writable.
 */
enum SpStatus sp_chain_new(uint64_t q,
                           size_t k,
                           size_t l,
                           enum SpModel model,
                           struct SpChain **out);

/**
 * Releases a chain; null is ignored.
 *
 * # Safety
 * `chain` must come from this library and not be used afterwards.
 */
void sp_chain_free(struct SpChain *chain);

/**
 * `P[s_w = 0]` rounded to `double`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum SpStatus sp_chain_ps0(const struct SpChain *chain, size_t w, double *out);

/**
 * `P[s_w = 0]` exactly, as `"num/den"`.
 *
 * # Safety
 * `buf` must hold `len` bytes; `needed` may be null.
 */
enum SpStatus sp_chain_ps0_exact(const struct SpChain *chain,
                                 size_t w,
                                 char *buf,
                                 size_t len,
                                 size_t *needed);

/**
 * Exact union bound on linear dependence of `n` samples.
 *
 * # Safety
 * Pointers must be valid.
 */
enum SpStatus sp_chain_ssw_bound(const struct SpChain *chain, size_t n, struct SpBound *out);

/**
 * `N(r, w)` as a decimal string.
 *
 * # Safety
 * `buf` must hold `len` bytes; `needed` may be null.
 */
enum SpStatus sp_ndecomp(uint64_t q,
                         size_t k,
                         size_t l,
                         size_t r,
                         size_t w,
                         char *buf,
                         size_t len,
                         size_t *needed);

/**
 * Exact probability that `n` samples fail to reach full rank, by
 * enumeration, as `"num/den"`.
 *
 * # Safety
 * `buf` must hold `len` bytes; `needed` may be null.
 */
enum SpStatus sp_exact_pn(uint64_t q,
                          size_t k,
                          size_t l,
                          size_t n,
                          enum SpModel model,
                          char *buf,
                          size_t len,
                          size_t *needed);

/**
 * Enclosure of `prod_{j>=1} (1 - q^-j)^-1`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SpStatus sp_bound_cq(uint64_t q, struct SpBound *out);

/**
 * Bound on `P[s_w = 0]`, `k <= l`, `w >= 1`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SpStatus sp_bound_psw(uint64_t q, uint32_t k, uint32_t l, uint32_t w, struct SpBound *out);

/**
 * Bound on the probability that `n >= kl` samples fail to span.
 * `epsilon` and `kappa` are given as `num/den` pairs.
 *
 * # Safety
 * `out` must be writable.
 */
enum SpStatus sp_bound_span(uint64_t q,
                            uint32_t k,
                            uint32_t l,
                            uint32_t n,
                            int64_t eps_num,
                            int64_t eps_den,
                            int64_t kappa_num,
                            int64_t kappa_den,
                            struct SpBound *out);

/**
 * Bound on `P[dmax((C*C')^perp) >= k + l]`, `k + l <= n <= kl`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SpStatus sp_bound_dmax(uint64_t q, uint32_t k, uint32_t l, uint32_t n, struct SpBound *out);

/**
 * Whether `kappa = num/den` satisfies its defining inequality for `q`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SpStatus sp_kappa_valid(uint64_t q, int64_t num, int64_t den, bool *out);

/**
 * Seeded Monte Carlo estimate with its matching bound, using the default
 * `epsilon = 1/2`, `kappa = 23/100`.
 *
 * # Safety
 * Pointers must be valid.
 */
enum SpStatus sp_estimate(const struct SpConfig *config, struct SpEstimate *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STARPROD_H */
