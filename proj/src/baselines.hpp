#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "error.hpp"

namespace rsidx {

// Unrestricted binary search: smallest p with data[p] >= key, data.size()
// if none. This is the correctness oracle for every other lookup path.
uint64_t bs_lower_bound(std::span<const uint64_t> data, uint64_t key);

// Sorted-array index holding every stride-th element. A lookup binary
// searches the samples to find the covering stride window, then binary
// searches the window, which spans at most stride + 1 elements.
class SampledIndex {
 public:
  static constexpr uint32_t kDefaultStride = 32;

  struct Sample {
    uint64_t key = 0;
    uint64_t position = 0;
  };

  SampledIndex(std::span<const uint64_t> data, uint32_t stride);

  // Equals bs_lower_bound(data, key) for the data this was built over.
  uint64_t lower_bound(std::span<const uint64_t> data, uint64_t key) const;

  uint32_t stride() const { return stride_; }
  uint64_t sample_count() const { return samples_.size(); }
  uint64_t size_in_bytes() const {
    return samples_.size() * sizeof(Sample) + 16;
  }

 private:
  uint32_t stride_;
  uint64_t num_keys_;
  std::vector<Sample> samples_;
};

}  // namespace rsidx
