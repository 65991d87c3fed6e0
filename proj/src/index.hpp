#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "corridor.hpp"
#include "error.hpp"
#include "radix_table.hpp"

namespace rsidx {

// Half-open position range [begin, end) in the indexed array.
struct SearchBound {
  uint64_t begin = 0;
  uint64_t end = 0;

  uint64_t width() const { return end - begin; }

  friend bool operator==(const SearchBound&, const SearchBound&) = default;
};

// Immutable learned index over a sorted u64 array: a piecewise-linear
// model of key -> first-occurrence position (the spline knots) plus a flat
// prefix table narrowing the knot search. Lookups produce a position window
// of width <= 2e + 2 around the interpolated estimate, then finish with a
// binary search restricted to that window.
class RadixSpline {
 public:
  uint64_t min_key() const { return min_key_; }
  uint64_t max_key() const { return max_key_; }
  uint32_t spline_error() const { return spline_error_; }
  uint32_t radix_bits() const { return table_.radix_bits(); }
  uint64_t num_keys() const { return num_keys_; }
  uint64_t knot_count() const { return knots_.size(); }
  std::span<const SplineKnot> knots() const { return knots_; }
  const RadixTable& table() const { return table_; }

  // Interpolated position of key's first occurrence. Requires
  // min_key <= key <= max_key; lookup paths clamp before calling.
  double estimate_position(uint64_t key) const;

  // Window guaranteed to contain the first occurrence of a present key.
  // Out-of-domain probes are clamped: key < min_key yields [0, 0).
  SearchBound search_bound(uint64_t key) const;

  // Smallest position p with data[p] >= key, num_keys() if none. data must
  // be the exact array this index was built from.
  uint64_t lookup_lower_bound(std::span<const uint64_t> data,
                              uint64_t key) const;

  // Serialized footprint: header + knots + table entries.
  uint64_t size_in_bytes() const;

  // Little-endian binary image; bit-exact for identical builds.
  std::vector<uint8_t> serialize() const;
  static RadixSpline deserialize(std::span<const uint8_t> bytes);

  void save(const std::string& path) const;
  static RadixSpline load(const std::string& path);

 private:
  friend class Builder;

  RadixSpline(uint64_t min_key, uint64_t max_key, uint32_t spline_error,
              uint64_t num_keys, std::vector<SplineKnot> knots,
              RadixTable table)
      : min_key_(min_key),
        max_key_(max_key),
        spline_error_(spline_error),
        num_keys_(num_keys),
        knots_(std::move(knots)),
        table_(std::move(table)) {}

  // Interpolation without the domain check; key must be in
  // [min_key_, max_key_].
  double estimate_in_domain(uint64_t key) const;

  uint64_t min_key_;
  uint64_t max_key_;
  uint32_t spline_error_;
  uint64_t num_keys_;
  std::vector<SplineKnot> knots_;
  RadixTable table_;
};

// Single-pass builder. Keys arrive in nondecreasing order and must lie in
// the declared [min_key, max_key] range, which is needed up front to size
// the radix table and derive the prefix shift. State is proportional to the
// emitted knots plus the table, never to the number of keys fed in.
class Builder {
 public:
  Builder(uint64_t min_key, uint64_t max_key, uint32_t spline_error,
          uint32_t radix_bits);

  void add_key(uint64_t key);
  RadixSpline finalize();

  uint64_t num_keys() const { return num_keys_; }
  uint64_t knot_count() const { return knots_.size(); }

  // Current heap footprint of the builder state, for memory accounting.
  uint64_t state_bytes() const;

 private:
  void append_knot(SplineKnot knot);

  uint64_t min_key_;
  uint64_t max_key_;
  uint32_t spline_error_;
  uint64_t num_keys_ = 0;
  uint64_t last_key_ = 0;
  bool finalized_ = false;
  SplineCorridor corridor_;
  std::vector<SplineKnot> knots_;
  RadixTable table_;
};

// One-shot build over an in-memory sorted array, using its first and last
// elements as the key range.
RadixSpline build_index(std::span<const uint64_t> sorted_keys,
                        uint32_t spline_error, uint32_t radix_bits);

}  // namespace rsidx
