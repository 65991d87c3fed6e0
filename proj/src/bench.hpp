#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace rsidx {

enum class IndexKind : uint32_t {
  kRadixSpline,
  kBinarySearch,
  kSampled,
};

struct BenchConfig {
  IndexKind kind = IndexKind::kRadixSpline;
  uint32_t spline_error = 32;
  uint32_t radix_bits = 18;
  uint32_t stride = 32;
  uint64_t probe_count = 1'000'000;
  uint64_t probe_seed = 42;
  uint32_t repetitions = 1;
  bool include_absent = false;
};

struct BenchResult {
  uint64_t build_ns = 0;
  double avg_lookup_ns = 0.0;
  double min_lookup_ns = 0.0;
  uint64_t index_size_bytes = 0;
  // Knots for the spline index, samples for the sampled index, 0 for
  // plain binary search.
  uint64_t structure_count = 0;
  uint64_t checksum = 0;
};

// count probes drawn uniformly from keys; with include_absent, each probe
// is replaced by a uniform random u64 on a coin flip. Deterministic in
// (keys, count, seed).
std::vector<uint64_t> make_probes(std::span<const uint64_t> keys,
                                  uint64_t count, uint64_t seed,
                                  bool include_absent);

// FNV-1a over the little-endian bytes of each lower-bound answer, in probe
// order. Computed with the unrestricted binary search.
uint64_t oracle_checksum(std::span<const uint64_t> data,
                         std::span<const uint64_t> probes);

// Builds the configured index over data, times the build once and the
// probe loop config.repetitions times, and verifies every repetition's
// answer checksum against the oracle before any timing is reported.
BenchResult run_bench(std::span<const uint64_t> data,
                      const BenchConfig& config);

const char* index_kind_name(IndexKind kind);
IndexKind index_kind_from_name(std::string_view name);

}  // namespace rsidx
