#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace rsidx {

enum class DatasetKind : uint32_t {
  kUniformDense,   // 0, 1, ..., n-1
  kUniformSparse,  // n distinct draws from [0, 2^universe_bits)
  kLognormal,      // lognormal(mu, sigma) scaled into the u64 range
  kSegmented,      // piecewise-arithmetic runs with per-segment strides
};

struct DatasetSpec {
  DatasetKind kind = DatasetKind::kLognormal;
  uint64_t n = 0;
  uint64_t seed = 1;
  double lognormal_mu = 0.0;
  double lognormal_sigma = 2.0;
  uint32_t sparse_universe_bits = 63;
  uint32_t segments = 16;
};

// Sorted distinct keys, deterministic in (spec, seed).
std::vector<uint64_t> generate(const DatasetSpec& spec);

// Binary key-file format: little-endian u64 count, then count u64 keys.
// write_keys requires nondecreasing input; read_keys validates the size,
// the count, and sortedness.
void write_keys(const std::string& path, std::span<const uint64_t> keys);
std::vector<uint64_t> read_keys(const std::string& path);

// Small text sidecar at "<key_path>.meta" recording the generation spec.
void write_metadata(const std::string& key_path, const DatasetSpec& spec);

const char* dataset_kind_name(DatasetKind kind);
DatasetKind dataset_kind_from_name(std::string_view name);

}  // namespace rsidx
