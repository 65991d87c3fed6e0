#include "index.hpp"

#include <algorithm>
#include <fstream>

namespace rsidx {

namespace {

constexpr uint32_t kMagic = 0x58495352;  // "RSIX" little-endian
constexpr uint32_t kFormatVersion = 1;
constexpr uint64_t kHeaderBytes = 48;

void put_u32(std::vector<uint8_t>& out, uint32_t value) {
  for (int i = 0; i < 4; ++i) {
    out.push_back(static_cast<uint8_t>(value >> (8 * i)));
  }
}

void put_u64(std::vector<uint8_t>& out, uint64_t value) {
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<uint8_t>(value >> (8 * i)));
  }
}

uint32_t read_u32(const uint8_t* bytes) {
  uint32_t value = 0;
  for (int i = 0; i < 4; ++i) {
    value |= static_cast<uint32_t>(bytes[i]) << (8 * i);
  }
  return value;
}

uint64_t read_u64(const uint8_t* bytes) {
  uint64_t value = 0;
  for (int i = 0; i < 8; ++i) {
    value |= static_cast<uint64_t>(bytes[i]) << (8 * i);
  }
  return value;
}

uint64_t checked_key_span(uint64_t min_key, uint64_t max_key) {
  if (min_key > max_key) {
    raise(StatusCode::kInvalidArgument, "min_key must not exceed max_key");
  }
  return max_key - min_key;
}

}  // namespace

double RadixSpline::estimate_in_domain(uint64_t key) const {
  const auto [lo, hi] = table_.knot_range(table_.prefix(key - min_key_));
  const uint64_t count = knots_.size();
  const uint64_t search_end = std::min<uint64_t>(uint64_t{hi} + 1, count);
  const auto begin = knots_.begin();
  const auto it = std::upper_bound(
      begin + lo, begin + search_end, key,
      [](uint64_t probe, const SplineKnot& knot) { return probe < knot.key; });
  const uint64_t right = static_cast<uint64_t>(it - begin);
  if (right == count) {
    // Only reachable for key equal to the last knot's key (== max_key).
    return static_cast<double>(knots_.back().position);
  }
  const SplineKnot& left_knot = knots_[right - 1];
  const SplineKnot& right_knot = knots_[right];
  const double slope =
      static_cast<double>(right_knot.position - left_knot.position) /
      static_cast<double>(right_knot.key - left_knot.key);
  return static_cast<double>(left_knot.position) +
         static_cast<double>(key - left_knot.key) * slope;
}

double RadixSpline::estimate_position(uint64_t key) const {
  if (key < min_key_ || key > max_key_) {
    raise(StatusCode::kDomainViolation,
          "key outside the indexed range [min_key, max_key]");
  }
  return estimate_in_domain(key);
}

SearchBound RadixSpline::search_bound(uint64_t key) const {
  if (key < min_key_) {
    return SearchBound{0, 0};
  }
  const uint64_t clamped = std::min(key, max_key_);
  const uint64_t predicted =
      static_cast<uint64_t>(estimate_in_domain(clamped));
  const uint64_t error = spline_error_;
  const uint64_t begin = predicted >= error ? predicted - error : 0;
  const uint64_t end = std::min(num_keys_, predicted + error + 2);
  return SearchBound{begin, std::max(begin, end)};
}

uint64_t RadixSpline::lookup_lower_bound(std::span<const uint64_t> data,
                                         uint64_t key) const {
  if (data.size() != num_keys_) {
    raise(StatusCode::kInvalidArgument,
          "data length does not match the indexed key count");
  }
  if (key <= min_key_) {
    return 0;
  }
  const SearchBound bound = search_bound(key);
  const uint64_t* base = data.data();
  uint64_t pos = static_cast<uint64_t>(
      std::lower_bound(base + bound.begin, base + bound.end, key) - base);
  if (pos == bound.end && bound.end < num_keys_) {
    // A duplicate run can displace an absent probe's answer past the
    // window; the window start is still always a valid lower limit.
    pos = static_cast<uint64_t>(
        std::lower_bound(base + bound.end, base + num_keys_, key) - base);
  }
  return pos;
}

uint64_t RadixSpline::size_in_bytes() const {
  return kHeaderBytes + knots_.size() * sizeof(SplineKnot) +
         table_.size_in_bytes();
}

std::vector<uint8_t> RadixSpline::serialize() const {
  std::vector<uint8_t> out;
  out.reserve(size_in_bytes());
  put_u32(out, kMagic);
  put_u32(out, kFormatVersion);
  put_u64(out, min_key_);
  put_u64(out, max_key_);
  put_u32(out, spline_error_);
  put_u32(out, table_.radix_bits());
  put_u64(out, num_keys_);
  put_u64(out, knots_.size());
  for (const SplineKnot& knot : knots_) {
    put_u64(out, knot.key);
    put_u64(out, knot.position);
  }
  for (uint32_t entry : table_.entries()) {
    put_u32(out, entry);
  }
  return out;
}

RadixSpline RadixSpline::deserialize(std::span<const uint8_t> bytes) {
  if (bytes.size() < kHeaderBytes) {
    raise(StatusCode::kFormatError, "index image shorter than its header");
  }
  const uint8_t* p = bytes.data();
  if (read_u32(p) != kMagic) {
    raise(StatusCode::kFormatError, "bad index magic");
  }
  if (read_u32(p + 4) != kFormatVersion) {
    raise(StatusCode::kFormatError, "unsupported index format version");
  }
  const uint64_t min_key = read_u64(p + 8);
  const uint64_t max_key = read_u64(p + 16);
  const uint32_t spline_error = read_u32(p + 24);
  const uint32_t radix_bits = read_u32(p + 28);
  const uint64_t num_keys = read_u64(p + 32);
  const uint64_t knot_count = read_u64(p + 40);
  if (min_key > max_key) {
    raise(StatusCode::kFormatError, "index key range is inverted");
  }
  if (radix_bits < RadixTable::kMinRadixBits ||
      radix_bits > RadixTable::kMaxRadixBits) {
    raise(StatusCode::kFormatError, "radix_bits outside the supported range");
  }
  if (knot_count == 0 || knot_count > RadixTable::kMaxKnots ||
      knot_count > num_keys) {
    raise(StatusCode::kFormatError, "implausible knot count");
  }
  const uint64_t slot_count = (uint64_t{1} << radix_bits) + 1;
  const uint64_t expected =
      kHeaderBytes + knot_count * 16 + slot_count * 4;
  if (bytes.size() != expected) {
    raise(StatusCode::kFormatError, "index image size mismatch");
  }

  std::vector<SplineKnot> knots;
  knots.reserve(knot_count);
  const uint8_t* cursor = p + kHeaderBytes;
  for (uint64_t i = 0; i < knot_count; ++i, cursor += 16) {
    const SplineKnot knot{read_u64(cursor), read_u64(cursor + 8)};
    if (i > 0 && (knot.key <= knots.back().key ||
                  knot.position <= knots.back().position)) {
      raise(StatusCode::kFormatError,
            "knots must be strictly increasing in key and position");
    }
    knots.push_back(knot);
  }
  if (knots.front().key != min_key || knots.front().position != 0 ||
      knots.back().key != max_key || knots.back().position >= num_keys) {
    raise(StatusCode::kFormatError, "knots do not cover the declared domain");
  }

  std::vector<uint32_t> entries;
  entries.reserve(slot_count);
  for (uint64_t i = 0; i < slot_count; ++i, cursor += 4) {
    entries.push_back(read_u32(cursor));
  }
  if (entries.back() != knot_count) {
    raise(StatusCode::kFormatError, "radix table sentinel mismatch");
  }
  RadixTable table = RadixTable::from_entries(
      radix_bits, RadixTable::shift_for_span(max_key - min_key, radix_bits),
      std::move(entries));
  return RadixSpline(min_key, max_key, spline_error, num_keys,
                     std::move(knots), std::move(table));
}

void RadixSpline::save(const std::string& path) const {
  const std::vector<uint8_t> image = serialize();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    raise(StatusCode::kIoError, "cannot open " + path + " for writing");
  }
  out.write(reinterpret_cast<const char*>(image.data()),
            static_cast<std::streamsize>(image.size()));
  if (!out) {
    raise(StatusCode::kIoError, "short write to " + path);
  }
}

RadixSpline RadixSpline::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) {
    raise(StatusCode::kIoError, "cannot open " + path + " for reading");
  }
  const std::streamsize size = in.tellg();
  in.seekg(0);
  std::vector<uint8_t> image(static_cast<size_t>(size));
  in.read(reinterpret_cast<char*>(image.data()), size);
  if (!in) {
    raise(StatusCode::kIoError, "short read from " + path);
  }
  return deserialize(image);
}

Builder::Builder(uint64_t min_key, uint64_t max_key, uint32_t spline_error,
                 uint32_t radix_bits)
    : min_key_(min_key),
      max_key_(max_key),
      spline_error_(spline_error),
      corridor_(spline_error),
      table_(radix_bits, RadixTable::shift_for_span(
                             checked_key_span(min_key, max_key), radix_bits)) {}

void Builder::add_key(uint64_t key) {
  if (finalized_) {
    raise(StatusCode::kInvalidArgument, "builder already finalized");
  }
  if (num_keys_ > 0 && key < last_key_) {
    raise(StatusCode::kOrderViolation, "keys must arrive in nondecreasing order");
  }
  if (key < min_key_ || key > max_key_) {
    raise(StatusCode::kDomainViolation,
          "key outside the declared [min_key, max_key] range");
  }
  if (num_keys_ == 0 || key != last_key_) {
    if (auto knot = corridor_.add(CdfPoint{key, num_keys_})) {
      append_knot(*knot);
    }
    last_key_ = key;
  }
  ++num_keys_;
}

RadixSpline Builder::finalize() {
  if (finalized_) {
    raise(StatusCode::kInvalidArgument, "builder already finalized");
  }
  if (num_keys_ == 0) {
    raise(StatusCode::kEmptyInput, "cannot finalize a builder with no keys");
  }
  if (auto knot = corridor_.finish()) {
    append_knot(*knot);
  }
  table_.seal(static_cast<uint32_t>(knots_.size()));
  finalized_ = true;
  return RadixSpline(min_key_, max_key_, spline_error_, num_keys_,
                     std::move(knots_), std::move(table_));
}

void Builder::append_knot(SplineKnot knot) {
  if (knots_.size() >= RadixTable::kMaxKnots) {
    raise(StatusCode::kCapacityExceeded,
          "knot count exceeds 32-bit table entries");
  }
  table_.note_knot(table_.prefix(knot.key - min_key_),
                   static_cast<uint32_t>(knots_.size()));
  knots_.push_back(knot);
}

uint64_t Builder::state_bytes() const {
  return sizeof(*this) + knots_.capacity() * sizeof(SplineKnot) +
         table_.entries_capacity() * sizeof(uint32_t);
}

RadixSpline build_index(std::span<const uint64_t> sorted_keys,
                        uint32_t spline_error, uint32_t radix_bits) {
  if (sorted_keys.empty()) {
    raise(StatusCode::kEmptyInput, "cannot build an index over no keys");
  }
  Builder builder(sorted_keys.front(), sorted_keys.back(), spline_error,
                  radix_bits);
  for (uint64_t key : sorted_keys) {
    builder.add_key(key);
  }
  return builder.finalize();
}

}  // namespace rsidx
