/* C interface to the rsidx learned-index library.
 *
 * All handles are opaque and owned by the caller via the matching
 * _destroy function. Fallible calls return rsidx_status; on failure the
 * thread-local message from rsidx_last_error() describes the cause and
 * output parameters are left untouched. Plain-value getters return 0 when
 * given a null handle.
 */

#ifndef RSIDX_H
#define RSIDX_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef RSIDX_API
#if defined(__GNUC__) || defined(__clang__)
#define RSIDX_API __attribute__((visibility("default")))
#else
#define RSIDX_API
#endif
#endif

typedef enum rsidx_status {
  RSIDX_OK = 0,
  RSIDX_ERR_INVALID_ARGUMENT = 1,
  RSIDX_ERR_ORDER_VIOLATION = 2,
  RSIDX_ERR_DOMAIN_VIOLATION = 3,
  RSIDX_ERR_EMPTY_INPUT = 4,
  RSIDX_ERR_CAPACITY_EXCEEDED = 5,
  RSIDX_ERR_IO = 6,
  RSIDX_ERR_FORMAT = 7,
  RSIDX_ERR_CHECKSUM_MISMATCH = 8,
  RSIDX_ERR_INTERNAL = 9,
  RSIDX_ERR_NO_MEMORY = 10
} rsidx_status;

RSIDX_API const char* rsidx_version(void);
RSIDX_API const char* rsidx_status_name(rsidx_status status);

/* Message from the most recent failing call on this thread; empty string
 * if the last call succeeded. The pointer stays valid until the next
 * failing call on the same thread. */
RSIDX_API const char* rsidx_last_error(void);

/* ---- Learned index ---- */

typedef struct rsidx_builder rsidx_builder;
typedef struct rsidx_index rsidx_index;

/* Half-open position range [begin, end). */
typedef struct rsidx_search_bound {
  uint64_t begin;
  uint64_t end;
} rsidx_search_bound;

/* Single-pass builder. Keys must arrive in nondecreasing order and lie in
 * [min_key, max_key]. The builder outlives finalize and must be destroyed
 * separately from the index it produced. */
RSIDX_API rsidx_status rsidx_builder_create(uint64_t min_key, uint64_t max_key,
                                            uint32_t spline_error,
                                            uint32_t radix_bits,
                                            rsidx_builder** out_builder);
RSIDX_API rsidx_status rsidx_builder_add_key(rsidx_builder* builder,
                                             uint64_t key);
RSIDX_API rsidx_status rsidx_builder_add_keys(rsidx_builder* builder,
                                              const uint64_t* keys,
                                              uint64_t count);
RSIDX_API rsidx_status rsidx_builder_finalize(rsidx_builder* builder,
                                              rsidx_index** out_index);
RSIDX_API void rsidx_builder_destroy(rsidx_builder* builder);

/* One-shot build over a sorted array; the array's first and last elements
 * become the key range. */
RSIDX_API rsidx_status rsidx_index_build(const uint64_t* keys, uint64_t count,
                                         uint32_t spline_error,
                                         uint32_t radix_bits,
                                         rsidx_index** out_index);

RSIDX_API rsidx_status rsidx_index_save(const rsidx_index* index,
                                        const char* path);
RSIDX_API rsidx_status rsidx_index_load(const char* path,
                                        rsidx_index** out_index);
RSIDX_API void rsidx_index_destroy(rsidx_index* index);

RSIDX_API uint64_t rsidx_index_num_keys(const rsidx_index* index);
RSIDX_API uint64_t rsidx_index_knot_count(const rsidx_index* index);
RSIDX_API uint64_t rsidx_index_size_bytes(const rsidx_index* index);
RSIDX_API uint64_t rsidx_index_min_key(const rsidx_index* index);
RSIDX_API uint64_t rsidx_index_max_key(const rsidx_index* index);
RSIDX_API uint32_t rsidx_index_spline_error(const rsidx_index* index);
RSIDX_API uint32_t rsidx_index_radix_bits(const rsidx_index* index);

/* Interpolated position of key's first occurrence; fails with
 * RSIDX_ERR_DOMAIN_VIOLATION outside [min_key, max_key]. */
RSIDX_API rsidx_status rsidx_index_estimate(const rsidx_index* index,
                                            uint64_t key,
                                            double* out_position);

/* Position window guaranteed to contain the lookup answer for present
 * keys; out-of-domain probes are clamped. */
RSIDX_API rsidx_status rsidx_index_search_bound(const rsidx_index* index,
                                                uint64_t key,
                                                rsidx_search_bound* out_bound);

/* Smallest position p with keys[p] >= key, count if none. keys must be the
 * exact array the index was built from. */
RSIDX_API rsidx_status rsidx_index_lower_bound(const rsidx_index* index,
                                               const uint64_t* keys,
                                               uint64_t count, uint64_t key,
                                               uint64_t* out_position);

/* ---- Baselines ---- */

typedef struct rsidx_sampled rsidx_sampled;

/* Unrestricted binary search over a sorted array. */
RSIDX_API uint64_t rsidx_bs_lower_bound(const uint64_t* keys, uint64_t count,
                                        uint64_t key);

RSIDX_API rsidx_status rsidx_sampled_create(const uint64_t* keys,
                                            uint64_t count, uint32_t stride,
                                            rsidx_sampled** out_index);
RSIDX_API rsidx_status rsidx_sampled_lower_bound(const rsidx_sampled* index,
                                                 const uint64_t* keys,
                                                 uint64_t count, uint64_t key,
                                                 uint64_t* out_position);
RSIDX_API uint64_t rsidx_sampled_size_bytes(const rsidx_sampled* index);
RSIDX_API uint64_t rsidx_sampled_count(const rsidx_sampled* index);
RSIDX_API void rsidx_sampled_destroy(rsidx_sampled* index);

/* ---- Datasets ---- */

typedef struct rsidx_dataset rsidx_dataset;

typedef enum rsidx_dataset_kind {
  RSIDX_DATASET_UNIFORM_DENSE = 0,
  RSIDX_DATASET_UNIFORM_SPARSE = 1,
  RSIDX_DATASET_LOGNORMAL = 2,
  RSIDX_DATASET_SEGMENTED = 3
} rsidx_dataset_kind;

typedef struct rsidx_dataset_spec {
  rsidx_dataset_kind kind;
  uint64_t n;
  uint64_t seed;
  double lognormal_mu;        /* lognormal only */
  double lognormal_sigma;     /* lognormal only */
  uint32_t universe_bits;     /* uniform_sparse only, in [1, 64] */
  uint32_t segments;          /* segmented only */
} rsidx_dataset_spec;

/* Fills defaults: lognormal, n=0 (caller must set), seed=1, mu=0, sigma=2,
 * universe_bits=63, segments=16. */
RSIDX_API void rsidx_dataset_spec_init(rsidx_dataset_spec* spec);

RSIDX_API rsidx_status rsidx_dataset_generate(const rsidx_dataset_spec* spec,
                                              rsidx_dataset** out_dataset);

/* Binary key-file IO: little-endian u64 count, then count u64 keys.
 * Reading validates the size, the count, and sortedness. Writing with
 * write_metadata != 0 also emits "<path>.meta" describing the generation
 * spec; that requires a generated (not file-loaded) dataset. */
RSIDX_API rsidx_status rsidx_dataset_read(const char* path,
                                          rsidx_dataset** out_dataset);
RSIDX_API rsidx_status rsidx_dataset_write(const rsidx_dataset* dataset,
                                           const char* path,
                                           int write_metadata);

RSIDX_API const uint64_t* rsidx_dataset_keys(const rsidx_dataset* dataset);
RSIDX_API uint64_t rsidx_dataset_count(const rsidx_dataset* dataset);
RSIDX_API void rsidx_dataset_destroy(rsidx_dataset* dataset);

/* ---- Benchmark ---- */

typedef enum rsidx_index_kind {
  RSIDX_INDEX_RADIX_SPLINE = 0,
  RSIDX_INDEX_BINARY_SEARCH = 1,
  RSIDX_INDEX_SAMPLED = 2
} rsidx_index_kind;

typedef struct rsidx_bench_config {
  rsidx_index_kind kind;
  uint32_t spline_error; /* rs only */
  uint32_t radix_bits;   /* rs only */
  uint32_t stride;       /* sampled only */
  uint64_t probe_count;
  uint64_t probe_seed;
  uint32_t repetitions;
  int include_absent; /* mix uniform random u64 probes on a coin flip */
} rsidx_bench_config;

typedef struct rsidx_bench_result {
  uint64_t build_ns;
  double avg_lookup_ns;
  double min_lookup_ns;
  uint64_t index_size_bytes;
  uint64_t structure_count; /* knots (rs), samples (sampled), 0 (bs) */
  uint64_t checksum;        /* FNV-1a over the answer positions */
} rsidx_bench_result;

/* Fills defaults: rs, error=32, radix_bits=18, stride=32, probes=1000000,
 * probe_seed=42, repetitions=1, include_absent=0. */
RSIDX_API void rsidx_bench_config_init(rsidx_bench_config* config);

/* Builds the configured index over keys, runs the timed probe loop, and
 * verifies the answers against the binary-search oracle; timings are never
 * reported for wrong answers (RSIDX_ERR_CHECKSUM_MISMATCH instead). */
RSIDX_API rsidx_status rsidx_bench_run(const uint64_t* keys, uint64_t count,
                                       const rsidx_bench_config* config,
                                       rsidx_bench_result* out_result);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* RSIDX_H */
