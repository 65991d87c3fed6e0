#include "radix_table.hpp"

#include <bit>

namespace rsidx {

namespace {

uint32_t significant_bits(uint64_t value) {
  return static_cast<uint32_t>(std::bit_width(value));
}

}  // namespace

RadixTable::RadixTable(uint32_t radix_bits, uint32_t shift)
    : radix_bits_(radix_bits), shift_(shift) {
  if (radix_bits < kMinRadixBits || radix_bits > kMaxRadixBits) {
    raise(StatusCode::kInvalidArgument,
          "radix_bits must be in [" + std::to_string(kMinRadixBits) + ", " +
              std::to_string(kMaxRadixBits) + "]");
  }
  if (shift > 63) {
    raise(StatusCode::kInvalidArgument, "prefix shift must be below 64");
  }
  entries_.assign((uint64_t{1} << radix_bits) + 1, 0);
}

uint32_t RadixTable::shift_for_span(uint64_t key_span, uint32_t radix_bits) {
  const uint32_t bits = significant_bits(key_span);
  return bits > radix_bits ? bits - radix_bits : 0;
}

RadixTable RadixTable::build(std::span<const SplineKnot> knots,
                             uint64_t min_key, uint64_t max_key,
                             uint32_t radix_bits) {
  if (knots.empty()) {
    raise(StatusCode::kEmptyInput, "cannot build a radix table over no knots");
  }
  if (knots.size() > kMaxKnots) {
    raise(StatusCode::kCapacityExceeded,
          "knot count does not fit 32-bit table entries");
  }
  if (min_key > max_key || knots.front().key < min_key ||
      knots.back().key > max_key) {
    raise(StatusCode::kInvalidArgument, "knots outside the declared key range");
  }
  RadixTable table(radix_bits, shift_for_span(max_key - min_key, radix_bits));
  uint64_t prev_key = 0;
  for (uint32_t i = 0; i < knots.size(); ++i) {
    if (i > 0 && knots[i].key <= prev_key) {
      raise(StatusCode::kOrderViolation, "knot keys must be strictly increasing");
    }
    prev_key = knots[i].key;
    table.note_knot(table.prefix(knots[i].key - min_key), i);
  }
  table.seal(static_cast<uint32_t>(knots.size()));
  return table;
}

RadixTable RadixTable::from_entries(uint32_t radix_bits, uint32_t shift,
                                    std::vector<uint32_t> entries) {
  RadixTable table(radix_bits, shift);
  if (entries.size() != table.entries_.size()) {
    raise(StatusCode::kFormatError, "radix table entry count mismatch");
  }
  if (entries.front() != 0) {
    raise(StatusCode::kFormatError, "radix table must start at knot 0");
  }
  for (size_t i = 1; i < entries.size(); ++i) {
    if (entries[i] < entries[i - 1]) {
      raise(StatusCode::kFormatError, "radix table entries must be monotone");
    }
  }
  table.entries_ = std::move(entries);
  table.next_unfilled_ = table.entries_.size();
  table.sealed_ = true;
  return table;
}

void RadixTable::note_knot(uint64_t prefix, uint32_t knot_index) {
  if (sealed_) {
    raise(StatusCode::kInvalidArgument, "radix table already sealed");
  }
  if (prefix + 1 >= entries_.size()) {
    raise(StatusCode::kInvalidArgument, "knot prefix out of table range");
  }
  while (next_unfilled_ <= prefix) {
    entries_[next_unfilled_++] = knot_index;
  }
}

void RadixTable::seal(uint32_t knot_count) {
  if (sealed_) {
    raise(StatusCode::kInvalidArgument, "radix table already sealed");
  }
  while (next_unfilled_ < entries_.size()) {
    entries_[next_unfilled_++] = knot_count;
  }
  sealed_ = true;
}

}  // namespace rsidx
