#include "bench.hpp"

#include <chrono>
#include <limits>
#include <random>
#include <string>

#include "baselines.hpp"
#include "index.hpp"

namespace rsidx {

namespace {

using Clock = std::chrono::steady_clock;

uint64_t elapsed_ns(Clock::time_point start, Clock::time_point stop) {
  return static_cast<uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(stop - start)
          .count());
}

constexpr uint64_t kFnvOffset = 0xcbf29ce484222325ull;
constexpr uint64_t kFnvPrime = 0x100000001b3ull;

uint64_t fnv_mix(uint64_t hash, uint64_t value) {
  for (int i = 0; i < 8; ++i) {
    hash ^= (value >> (8 * i)) & 0xff;
    hash *= kFnvPrime;
  }
  return hash;
}

// One timed pass over the probes; the running checksum keeps the loop and
// its answers observable.
template <typename Lookup>
uint64_t timed_pass(std::span<const uint64_t> probes, uint64_t& out_ns,
                    Lookup&& lookup) {
  uint64_t checksum = kFnvOffset;
  const auto start = Clock::now();
  for (uint64_t probe : probes) {
    checksum = fnv_mix(checksum, lookup(probe));
  }
  const auto stop = Clock::now();
  out_ns = elapsed_ns(start, stop);
  return checksum;
}

template <typename Lookup>
void run_lookup_phase(std::span<const uint64_t> probes, uint64_t oracle,
                      uint32_t repetitions, BenchResult& result,
                      Lookup&& lookup) {
  double total_per_probe = 0.0;
  double best_per_probe = std::numeric_limits<double>::infinity();
  for (uint32_t rep = 0; rep < repetitions; ++rep) {
    uint64_t ns = 0;
    const uint64_t checksum = timed_pass(probes, ns, lookup);
    if (checksum != oracle) {
      raise(StatusCode::kChecksumMismatch,
            "lookup answers diverge from the binary-search oracle");
    }
    const double per_probe =
        static_cast<double>(ns) / static_cast<double>(probes.size());
    total_per_probe += per_probe;
    best_per_probe = std::min(best_per_probe, per_probe);
  }
  result.avg_lookup_ns = total_per_probe / repetitions;
  result.min_lookup_ns = best_per_probe;
  result.checksum = oracle;
}

}  // namespace

std::vector<uint64_t> make_probes(std::span<const uint64_t> keys,
                                  uint64_t count, uint64_t seed,
                                  bool include_absent) {
  if (keys.empty()) {
    raise(StatusCode::kEmptyInput, "cannot draw probes from no keys");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<uint64_t> pick(0, keys.size() - 1);
  std::uniform_int_distribution<uint64_t> any;
  std::vector<uint64_t> probes;
  probes.reserve(count);
  for (uint64_t i = 0; i < count; ++i) {
    if (include_absent && (rng() & 1)) {
      probes.push_back(any(rng));
    } else {
      probes.push_back(keys[pick(rng)]);
    }
  }
  return probes;
}

uint64_t oracle_checksum(std::span<const uint64_t> data,
                         std::span<const uint64_t> probes) {
  uint64_t checksum = kFnvOffset;
  for (uint64_t probe : probes) {
    checksum = fnv_mix(checksum, bs_lower_bound(data, probe));
  }
  return checksum;
}

BenchResult run_bench(std::span<const uint64_t> data,
                      const BenchConfig& config) {
  if (data.empty()) {
    raise(StatusCode::kEmptyInput, "cannot benchmark an empty dataset");
  }
  if (config.probe_count < 1) {
    raise(StatusCode::kInvalidArgument, "probe count must be at least 1");
  }
  if (config.repetitions < 1) {
    raise(StatusCode::kInvalidArgument, "repetitions must be at least 1");
  }

  const std::vector<uint64_t> probes = make_probes(
      data, config.probe_count, config.probe_seed, config.include_absent);
  const uint64_t oracle = oracle_checksum(data, probes);

  BenchResult result;
  switch (config.kind) {
    case IndexKind::kRadixSpline: {
      const auto start = Clock::now();
      RadixSpline index =
          build_index(data, config.spline_error, config.radix_bits);
      result.build_ns = elapsed_ns(start, Clock::now());
      result.index_size_bytes = index.size_in_bytes();
      result.structure_count = index.knot_count();
      run_lookup_phase(probes, oracle, config.repetitions, result,
                       [&](uint64_t probe) {
                         return index.lookup_lower_bound(data, probe);
                       });
      return result;
    }
    case IndexKind::kBinarySearch: {
      run_lookup_phase(
          probes, oracle, config.repetitions, result,
          [&](uint64_t probe) { return bs_lower_bound(data, probe); });
      return result;
    }
    case IndexKind::kSampled: {
      const auto start = Clock::now();
      SampledIndex index(data, config.stride);
      result.build_ns = elapsed_ns(start, Clock::now());
      result.index_size_bytes = index.size_in_bytes();
      result.structure_count = index.sample_count();
      run_lookup_phase(
          probes, oracle, config.repetitions, result,
          [&](uint64_t probe) { return index.lower_bound(data, probe); });
      return result;
    }
  }
  raise(StatusCode::kInvalidArgument, "unknown index kind");
}

const char* index_kind_name(IndexKind kind) {
  switch (kind) {
    case IndexKind::kRadixSpline:
      return "rs";
    case IndexKind::kBinarySearch:
      return "bs";
    case IndexKind::kSampled:
      return "sampled";
  }
  return "unknown";
}

IndexKind index_kind_from_name(std::string_view name) {
  if (name == "rs") return IndexKind::kRadixSpline;
  if (name == "bs") return IndexKind::kBinarySearch;
  if (name == "sampled") return IndexKind::kSampled;
  raise(StatusCode::kInvalidArgument,
        "unknown index kind: " + std::string(name));
}

}  // namespace rsidx
