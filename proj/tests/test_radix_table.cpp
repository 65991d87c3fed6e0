#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "radix_table.hpp"

using rsidx::Error;
using rsidx::RadixTable;
using rsidx::SplineKnot;
using rsidx::StatusCode;

namespace {

std::vector<SplineKnot> knots_from_keys(const std::vector<uint64_t>& keys) {
  std::vector<SplineKnot> knots;
  for (size_t i = 0; i < keys.size(); ++i) {
    knots.push_back(SplineKnot{keys[i], i});
  }
  return knots;
}

StatusCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& error) {
    return error.code();
  }
  return StatusCode::kOk;
}

}  // namespace

TEST_CASE("shift maps the key span into the prefix range") {
  // 20-bit span at r=20 needs no shift.
  CHECK(RadixTable::shift_for_span((uint64_t{1} << 20) - 1, 20) == 0);
  // Full 64-bit span at r=3 keeps the top three bits.
  CHECK(RadixTable::shift_for_span(~uint64_t{0}, 3) == 61);
  CHECK(RadixTable::shift_for_span(0, 5) == 0);
  CHECK(RadixTable::shift_for_span((uint64_t{1} << 20), 20) == 1);
  CHECK(RadixTable::shift_for_span(255, 8) == 0);
  CHECK(RadixTable::shift_for_span(256, 8) == 1);
}

TEST_CASE("top bits of the normalized key select the slot") {
  const std::vector<SplineKnot> knots{{0, 0}, {uint64_t{5} << 61, 1}};
  const auto table =
      RadixTable::build(knots, 0, ~uint64_t{0}, 3);
  CHECK(table.shift() == 61);
  // Normalized key with top bits 101 lands in slot 5.
  CHECK(table.prefix(uint64_t{5} << 61) == 5);
  CHECK(table.prefix(0) == 0);
}

TEST_CASE("streamed build fills gaps and the sentinel") {
  // Keys 0,1,2,6 with shift 1 have prefixes 0,0,1,3.
  const auto knots = knots_from_keys({0, 1, 2, 6});
  const auto table = RadixTable::build(knots, 0, 6, 2);
  CHECK(table.shift() == 1);
  const std::vector<uint32_t> expected{0, 2, 3, 3, 4};
  CHECK(std::vector<uint32_t>(table.entries().begin(),
                              table.entries().end()) == expected);
  CHECK(table.knot_range(1) == std::pair<uint32_t, uint32_t>(2, 3));
  // Gap prefix: empty interior range.
  CHECK(table.knot_range(2) == std::pair<uint32_t, uint32_t>(3, 3));
  CHECK(table.sealed());
  CHECK(table.slot_count() == 5);
  CHECK(table.size_in_bytes() == 5 * 4);
}

TEST_CASE("single knot fills every slot past zero with one") {
  const std::vector<SplineKnot> knots{{5, 0}};
  const auto table = RadixTable::build(knots, 5, 5, 3);
  CHECK(table.shift() == 0);
  const std::vector<uint32_t> expected{0, 1, 1, 1, 1, 1, 1, 1, 1};
  CHECK(std::vector<uint32_t>(table.entries().begin(),
                              table.entries().end()) == expected);
}

TEST_CASE("one knot per prefix is the identity fill") {
  const auto knots = knots_from_keys({0, 1, 2, 3, 4, 5, 6, 7});
  const auto table = RadixTable::build(knots, 0, 7, 3);
  for (uint32_t b = 0; b <= 8; ++b) {
    CHECK(table.entries()[b] == b);
  }
}

TEST_CASE("build validates its inputs") {
  const auto knots = knots_from_keys({1, 2, 3});
  CHECK(code_of([] {
          RadixTable::build({}, 0, 10, 4);
        }) == StatusCode::kEmptyInput);
  CHECK(code_of([&] {
          RadixTable::build(knots, 2, 3, 4);  // first knot below min_key
        }) == StatusCode::kInvalidArgument);
  CHECK(code_of([&] {
          RadixTable::build(knots, 1, 2, 4);  // last knot above max_key
        }) == StatusCode::kInvalidArgument);
  CHECK(code_of([&] {
          const std::vector<SplineKnot> unsorted{{2, 0}, {1, 1}};
          RadixTable::build(unsorted, 1, 2, 4);
        }) == StatusCode::kOrderViolation);
  CHECK(code_of([&] { RadixTable::build(knots, 1, 3, 0); }) ==
        StatusCode::kInvalidArgument);
  CHECK(code_of([&] { RadixTable::build(knots, 1, 3, 31); }) ==
        StatusCode::kInvalidArgument);
}

TEST_CASE("streaming misuse is rejected") {
  RadixTable table(2, 0);
  table.note_knot(0, 0);
  CHECK(code_of([&] { table.note_knot(4, 1); }) ==
        StatusCode::kInvalidArgument);  // prefix beyond 2^r - 1
  table.seal(1);
  CHECK(code_of([&] { table.note_knot(1, 1); }) ==
        StatusCode::kInvalidArgument);
  CHECK(code_of([&] { table.seal(1); }) == StatusCode::kInvalidArgument);
}

TEST_CASE("reconstruction validates table invariants") {
  const auto knots = knots_from_keys({0, 1, 2, 6});
  const auto table = RadixTable::build(knots, 0, 6, 2);
  const std::vector<uint32_t> entries(table.entries().begin(),
                                      table.entries().end());

  const auto rebuilt = RadixTable::from_entries(2, 1, entries);
  CHECK(rebuilt.sealed());
  CHECK(rebuilt.knot_range(1) == table.knot_range(1));

  CHECK(code_of([&] {
          RadixTable::from_entries(3, 1, entries);  // wrong slot count
        }) == StatusCode::kFormatError);
  CHECK(code_of([&] {
          auto bad = entries;
          bad.front() = 1;
          RadixTable::from_entries(2, 1, bad);
        }) == StatusCode::kFormatError);
  CHECK(code_of([&] {
          auto bad = entries;
          bad[2] = 0;  // breaks monotonicity
          RadixTable::from_entries(2, 1, bad);
        }) == StatusCode::kFormatError);
}

TEST_CASE("entries match the brute-force definition on random knot sets") {
  std::mt19937_64 rng(0x7AB1E);
  for (int trial = 0; trial < 300; ++trial) {
    const uint32_t radix_bits = 1 + rng() % 10;
    const uint64_t count = 1 + rng() % 512;
    std::vector<uint64_t> keys;
    uint64_t key = rng() % 16;
    for (uint64_t i = 0; i < count; ++i) {
      keys.push_back(key);
      key += 1 + rng() % (uint64_t{1} << (rng() % 48));
    }
    const auto knots = knots_from_keys(keys);
    const uint64_t min_key = keys.front();
    const uint64_t max_key = keys.back();
    const auto table = RadixTable::build(knots, min_key, max_key, radix_bits);
    const auto expected = oracle::brute_force_radix_entries(
        knots, min_key, table.shift(), radix_bits);
    CAPTURE(trial);
    CHECK(std::vector<uint32_t>(table.entries().begin(),
                                table.entries().end()) == expected);

    // Bracketing invariant: every knot's own prefix slot contains it.
    for (uint32_t j = 0; j < knots.size(); ++j) {
      const uint64_t b = table.prefix(knots[j].key - min_key);
      const auto [lo, hi] = table.knot_range(b);
      CHECK(lo <= j);
      CHECK(j < hi);
    }
  }
}
