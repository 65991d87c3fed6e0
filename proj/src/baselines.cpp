#include "baselines.hpp"

#include <algorithm>

namespace rsidx {

uint64_t bs_lower_bound(std::span<const uint64_t> data, uint64_t key) {
  return static_cast<uint64_t>(
      std::lower_bound(data.begin(), data.end(), key) - data.begin());
}

SampledIndex::SampledIndex(std::span<const uint64_t> data, uint32_t stride)
    : stride_(stride), num_keys_(data.size()) {
  if (stride == 0) {
    raise(StatusCode::kInvalidArgument, "stride must be at least 1");
  }
  if (data.empty()) {
    raise(StatusCode::kEmptyInput, "cannot sample an empty array");
  }
  samples_.reserve((data.size() + stride - 1) / stride);
  for (uint64_t pos = 0; pos < data.size(); pos += stride) {
    samples_.push_back(Sample{data[pos], pos});
  }
}

uint64_t SampledIndex::lower_bound(std::span<const uint64_t> data,
                                   uint64_t key) const {
  if (data.size() != num_keys_) {
    raise(StatusCode::kInvalidArgument,
          "data length does not match the sampled key count");
  }
  // First sample with key >= probe. Elements at or before the previous
  // sample are strictly below the probe, and the matching sample's element
  // is >= it, so the answer lies in (prev.position, match.position].
  const auto it = std::lower_bound(
      samples_.begin(), samples_.end(), key,
      [](const Sample& sample, uint64_t probe) { return sample.key < probe; });
  const uint64_t lo = it == samples_.begin() ? 0 : std::prev(it)->position + 1;
  const uint64_t hi =
      it == samples_.end() ? num_keys_ : std::min(it->position + 1, num_keys_);
  const uint64_t* base = data.data();
  return static_cast<uint64_t>(
      std::lower_bound(base + lo, base + hi, key) - base);
}

}  // namespace rsidx
