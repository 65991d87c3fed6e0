#pragma once

// Brute-force reference implementations, independent of the library's
// search structures. Tests freeze expectations against these.

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "corridor.hpp"

namespace oracle {

// Linear interpolation through the knot sequence by sequential scan.
inline double interpolate_at(std::span<const rsidx::SplineKnot> knots,
                             uint64_t key) {
  if (key <= knots.front().key) {
    return static_cast<double>(knots.front().position);
  }
  if (key >= knots.back().key) {
    return static_cast<double>(knots.back().position);
  }
  size_t right = 1;
  while (knots[right].key < key) {
    ++right;
  }
  if (knots[right].key == key) {
    return static_cast<double>(knots[right].position);
  }
  const rsidx::SplineKnot& l = knots[right - 1];
  const rsidx::SplineKnot& r = knots[right];
  const double slope = static_cast<double>(r.position - l.position) /
                       static_cast<double>(r.key - l.key);
  return static_cast<double>(l.position) +
         static_cast<double>(key - l.key) * slope;
}

inline double max_interpolation_error(
    std::span<const rsidx::SplineKnot> knots,
    std::span<const rsidx::CdfPoint> points) {
  double worst = 0.0;
  for (const rsidx::CdfPoint& point : points) {
    const double estimate = interpolate_at(knots, point.key);
    worst = std::max(worst,
                     std::abs(estimate - static_cast<double>(point.position)));
  }
  return worst;
}

// Distinct keys of a sorted array paired with their first positions.
inline std::vector<rsidx::CdfPoint> cdf_points(
    std::span<const uint64_t> keys) {
  std::vector<rsidx::CdfPoint> points;
  for (size_t i = 0; i < keys.size(); ++i) {
    if (i == 0 || keys[i] != keys[i - 1]) {
      points.push_back(rsidx::CdfPoint{keys[i], i});
    }
  }
  return points;
}

// Streams points through a fresh corridor and collects every knot.
inline std::vector<rsidx::SplineKnot> corridor_knots(
    std::span<const rsidx::CdfPoint> points, uint32_t max_error) {
  rsidx::SplineCorridor corridor(max_error);
  std::vector<rsidx::SplineKnot> knots;
  for (const rsidx::CdfPoint& point : points) {
    if (auto knot = corridor.add(point)) {
      knots.push_back(*knot);
    }
  }
  if (auto knot = corridor.finish()) {
    knots.push_back(*knot);
  }
  return knots;
}

// entries[b] = index of the first knot with prefix >= b, scanning every
// knot per slot; size 2^radix_bits + 1.
inline std::vector<uint32_t> brute_force_radix_entries(
    std::span<const rsidx::SplineKnot> knots, uint64_t min_key, uint32_t shift,
    uint32_t radix_bits) {
  const uint64_t slots = (uint64_t{1} << radix_bits) + 1;
  std::vector<uint32_t> entries(slots, static_cast<uint32_t>(knots.size()));
  for (uint64_t b = 0; b < slots; ++b) {
    for (uint32_t j = 0; j < knots.size(); ++j) {
      if (((knots[j].key - min_key) >> shift) >= b) {
        entries[b] = j;
        break;
      }
    }
  }
  return entries;
}

inline uint64_t linear_lower_bound(std::span<const uint64_t> data,
                                   uint64_t key) {
  for (size_t i = 0; i < data.size(); ++i) {
    if (data[i] >= key) {
      return i;
    }
  }
  return data.size();
}

// Sorted keys with heavy duplicate runs, including occasional runs far
// wider than any realistic error bound.
inline std::vector<uint64_t> duplicate_heavy(uint64_t n,
                                             std::mt19937_64& rng) {
  std::vector<uint64_t> keys;
  keys.reserve(n);
  uint64_t key = rng() % 1024;
  while (keys.size() < n) {
    const uint64_t roll = rng() % 100;
    uint64_t run = 1;
    if (roll >= 50 && roll < 80) {
      run = 2 + rng() % 7;
    } else if (roll >= 80 && roll < 95) {
      run = 9 + rng() % 56;
    } else if (roll >= 95) {
      run = 65 + rng() % 448;
    }
    for (uint64_t i = 0; i < run && keys.size() < n; ++i) {
      keys.push_back(key);
    }
    key += 1 + rng() % (uint64_t{1} << 16);
  }
  return keys;
}

}  // namespace oracle
