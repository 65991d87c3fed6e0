#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "corridor.hpp"
#include "error.hpp"

namespace rsidx {

// Flat prefix table over the knot sequence. Slot b holds the index of the
// first knot whose normalized r-bit key prefix is >= b; slots past the last
// knot's prefix hold the knot count. One extra sentinel slot makes range
// lookups for the highest prefix branch-free.
class RadixTable {
 public:
  static constexpr uint32_t kMinRadixBits = 1;
  static constexpr uint32_t kMaxRadixBits = 30;
  // Entries are uint32_t, so the knot count itself must fit one.
  static constexpr uint64_t kMaxKnots = 0xFFFFFFFFull;

  RadixTable(uint32_t radix_bits, uint32_t shift);

  // Right shift that maps every normalized key (key - min_key) of a domain
  // spanning key_span to a prefix below 2^radix_bits.
  static uint32_t shift_for_span(uint64_t key_span, uint32_t radix_bits);

  // One-shot build over a finished knot sequence.
  static RadixTable build(std::span<const SplineKnot> knots, uint64_t min_key,
                          uint64_t max_key, uint32_t radix_bits);

  // Reconstruction from serialized entries; validates table invariants.
  static RadixTable from_entries(uint32_t radix_bits, uint32_t shift,
                                 std::vector<uint32_t> entries);

  uint64_t prefix(uint64_t normalized_key) const {
    return normalized_key >> shift_;
  }

  // Streaming fill. Knot prefixes must arrive in nondecreasing order;
  // gaps are filled with the incoming knot's index.
  void note_knot(uint64_t prefix, uint32_t knot_index);

  // Fills the remaining slots (and the sentinel) with the knot count.
  void seal(uint32_t knot_count);
  bool sealed() const { return sealed_; }

  // Knot indexes bracketing prefix b: {entries[b], entries[b+1]}. The first
  // knot with a key strictly greater than any key of prefix b lies at an
  // index within the returned range, inclusive of its upper end.
  std::pair<uint32_t, uint32_t> knot_range(uint64_t prefix) const {
    return {entries_[prefix], entries_[prefix + 1]};
  }

  uint32_t radix_bits() const { return radix_bits_; }
  uint32_t shift() const { return shift_; }
  uint64_t slot_count() const { return entries_.size(); }  // 2^r + 1
  std::span<const uint32_t> entries() const { return entries_; }
  uint64_t entries_capacity() const { return entries_.capacity(); }
  uint64_t size_in_bytes() const {
    return entries_.size() * sizeof(uint32_t);
  }

 private:
  uint32_t radix_bits_;
  uint32_t shift_;
  bool sealed_ = false;
  uint64_t next_unfilled_ = 0;
  std::vector<uint32_t> entries_;
};

}  // namespace rsidx
