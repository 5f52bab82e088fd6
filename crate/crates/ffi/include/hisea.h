#ifndef HISEA_H
#define HISEA_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HiseaStatus {
  HISEA_STATUS_OK = 0,
  HISEA_STATUS_NULL_POINTER = 1,
  HISEA_STATUS_INVALID_ARGUMENT = 2,
  HISEA_STATUS_OUT_OF_BOUNDS = 3,
  HISEA_STATUS_NON_FINITE = 4,
  HISEA_STATUS_BUFFER_TOO_SMALL = 5,
  HISEA_STATUS_PANIC = 6,
} HiseaStatus;

typedef enum HiseaStopReason {
  HISEA_STOP_REASON_THRESHOLD = 0,
  HISEA_STOP_REASON_LOOP_LIMIT = 1,
} HiseaStopReason;

/**
 * A finished run.
 */
typedef struct HiseaRun HiseaRun;

/**
 * Run parameters. Quantile levels are fixed at 0.05, 0.10, ..., 0.95.
 */
typedef struct HiseaConfig {
  size_t n_f;
  size_t n_p;
  size_t n_g;
  size_t n_s;
  size_t max_loops;
  double epsilon;
  uint64_t seed;
} HiseaConfig;

/**
 * Objective callback: fitness of the `n` coordinates at `x`.
 */
typedef double (*HiseaObjective)(const double *x, size_t n, void *user_data);

/**
 * One row of a convergence trace. `pool_distance` is NaN on the first row.
 */
typedef struct HiseaGenerationRecord {
  size_t generation;
  size_t evaluations;
  double best_fitness;
  double mean_fitness;
  double pool_distance;
} HiseaGenerationRecord;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Copies the calling thread's last error message into `buf` as a
 * NUL-terminated string, truncating to fit. Returns the full message length
 * excluding the terminator; pass a null `buf` to query it.
 *
 * # Safety
 * `buf` must be null or point to `len` writable bytes.
 */
size_t hisea_last_error_message(char *buf, size_t len);

size_t hisea_benchmark_count(void);

/**
 * Default dimension of benchmark `id` (1-30).
 *
 * # Safety
 * `out_dim` must be null or valid for writes.
 */
enum HiseaStatus hisea_benchmark_dim(size_t id, size_t *out_dim);

/**
 * Writes the box of benchmark `id` into `lower` and `upper`, each holding
 * `len` doubles; `len` must equal the benchmark's dimension.
 *
 * # Safety
 * `lower` and `upper` must each be null or valid for `len` writes.
 */
enum HiseaStatus hisea_benchmark_bounds(size_t id, double *lower, double *upper, size_t len);

/**
 * Evaluates benchmark `id` at the `len` coordinates of `x`.
 *
 * # Safety
 * `x` must be valid for `len` reads and `out` valid for one write.
 */
enum HiseaStatus hisea_benchmark_evaluate(size_t id, const double *x, size_t len, double *out);

/**
 * Full-size parameters (5000 individuals, 300 cells, 300 loops).
 */
struct HiseaConfig hisea_config_paper(void);

/**
 * Reduced parameters for quick runs (500 individuals, 100 cells, 60 loops).
 */
struct HiseaConfig hisea_config_desk(void);

/**
 * Minimises benchmark `id` at its default dimension. On success `*out`
 * receives a handle to release with [`hisea_run_free`].
 *
 * # Safety
 * `config` must be valid for reads and `out` valid for one write.
 */
enum HiseaStatus hisea_run_benchmark(size_t id,
                                     const struct HiseaConfig *config,
                                     struct HiseaRun **out);

/**
 * Minimises a caller-supplied objective over the box `[lower, upper]` of
 * dimension `n`. The callback runs on the calling thread only and receives
 * `user_data` unchanged; a non-finite return value aborts the run with
 * `HISEA_STATUS_NON_FINITE`.
 *
 * # Safety
 * `lower` and `upper` must be valid for `n` reads, `config` for one read and
 * `out` for one write. `objective` must not unwind.
 */
enum HiseaStatus hisea_run_objective(HiseaObjective objective,
                                     void *user_data,
                                     const double *lower,
                                     const double *upper,
                                     size_t n,
                                     const struct HiseaConfig *config,
                                     struct HiseaRun **out);

/**
 * Best fitness found, or NaN for a null handle.
 *
 * # Safety
 * `run` must be null or a live handle.
 */
double hisea_run_best_fitness(const struct HiseaRun *run);

/**
 * Dimension of the run's search space, or 0 for a null handle.
 *
 * # Safety
 * `run` must be null or a live handle.
 */
size_t hisea_run_dim(const struct HiseaRun *run);

/**
 * Copies the best point into `out`, which must hold exactly the run's
 * dimension.
 *
 * # Safety
 * `run` must be null or a live handle; `out` must be valid for `len` writes.
 */
enum HiseaStatus hisea_run_best_point(const struct HiseaRun *run, double *out, size_t len);

/**
 * Generations run after the initial population, or 0 for a null handle.
 *
 * # Safety
 * `run` must be null or a live handle.
 */
size_t hisea_run_generations(const struct HiseaRun *run);

/**
 * Total objective evaluations, or 0 for a null handle.
 *
 * # Safety
 * `run` must be null or a live handle.
 */
size_t hisea_run_evaluations(const struct HiseaRun *run);

/**
 * Why the run stopped. A null handle reports `LOOP_LIMIT`.
 *
 * # Safety
 * `run` must be null or a live handle.
 */
enum HiseaStopReason hisea_run_stop_reason(const struct HiseaRun *run);

/**
 * Number of trace rows (generations + 1), or 0 for a null handle.
 *
 * # Safety
 * `run` must be null or a live handle.
 */
size_t hisea_run_trace_len(const struct HiseaRun *run);

/**
 * Copies trace row `index` into `out`.
 *
 * # Safety
 * `run` must be null or a live handle; `out` must be valid for one write.
 */
enum HiseaStatus hisea_run_trace_record(const struct HiseaRun *run,
                                        size_t index,
                                        struct HiseaGenerationRecord *out);

/**
 * Releases a run handle. Null is ignored.
 *
 * # Safety
 * `run` must be null or a handle not yet freed.
 */
void hisea_run_free(struct HiseaRun *run);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HISEA_H */
