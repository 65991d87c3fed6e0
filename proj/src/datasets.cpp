#include "datasets.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <random>

namespace rsidx {

namespace {

constexpr int kMaxRefillRounds = 64;

std::vector<uint64_t> generate_dense(uint64_t n) {
  std::vector<uint64_t> keys(n);
  for (uint64_t i = 0; i < n; ++i) {
    keys[i] = i;
  }
  return keys;
}

// Draws until n distinct keys remain; each round tops up by the shortfall
// plus slack, so expected rounds are tiny when the universe is large.
template <typename Draw>
std::vector<uint64_t> draw_distinct(uint64_t n, Draw&& draw) {
  std::vector<uint64_t> keys;
  keys.reserve(n + n / 8 + 16);
  for (int round = 0; round < kMaxRefillRounds; ++round) {
    const uint64_t shortfall = n - keys.size();
    const uint64_t batch = shortfall + shortfall / 8 + 16;
    for (uint64_t i = 0; i < batch; ++i) {
      keys.push_back(draw());
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    if (keys.size() >= n) {
      keys.resize(n);
      return keys;
    }
  }
  raise(StatusCode::kInternal,
        "distinct-key generation failed to converge; universe too dense");
}

std::vector<uint64_t> generate_sparse(const DatasetSpec& spec) {
  const uint32_t bits = spec.sparse_universe_bits;
  if (bits < 1 || bits > 64) {
    raise(StatusCode::kInvalidArgument, "universe_bits must be in [1, 64]");
  }
  if (bits < 64 && spec.n > (uint64_t{1} << (bits - 1))) {
    raise(StatusCode::kInvalidArgument,
          "universe too small to draw that many distinct keys");
  }
  const uint64_t top = bits == 64 ? ~uint64_t{0} : (uint64_t{1} << bits) - 1;
  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<uint64_t> dist(0, top);
  return draw_distinct(spec.n, [&] { return dist(rng); });
}

std::vector<uint64_t> generate_lognormal(const DatasetSpec& spec) {
  if (!(spec.lognormal_sigma > 0.0)) {
    raise(StatusCode::kInvalidArgument, "lognormal sigma must be positive");
  }
  std::mt19937_64 rng(spec.seed);
  std::lognormal_distribution<double> dist(spec.lognormal_mu,
                                           spec.lognormal_sigma);
  std::vector<double> raw(spec.n);
  for (double& value : raw) {
    value = dist(rng);
  }
  const double max_raw = *std::max_element(raw.begin(), raw.end());
  // Scale the sample maximum to 2^63 so keys span the u64 range without
  // the cast to integer overflowing.
  const double scale = 0x1p63 / max_raw;

  std::vector<uint64_t> keys;
  keys.reserve(spec.n);
  for (double value : raw) {
    keys.push_back(static_cast<uint64_t>(value * scale));
  }
  raw.clear();
  raw.shrink_to_fit();
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  for (int round = 0; keys.size() < spec.n; ++round) {
    if (round >= kMaxRefillRounds) {
      raise(StatusCode::kInternal,
            "lognormal quantization collapsed too many duplicates");
    }
    const uint64_t shortfall = spec.n - keys.size();
    for (uint64_t i = 0; i < shortfall + shortfall / 8 + 16; ++i) {
      // Refill draws can exceed the first pass's maximum; clamp so the
      // float-to-integer cast stays defined.
      const double scaled = std::min(dist(rng) * scale, 0x1.fffffffffffffp63);
      keys.push_back(static_cast<uint64_t>(scaled));
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  }
  keys.resize(spec.n);
  return keys;
}

std::vector<uint64_t> generate_segmented(const DatasetSpec& spec) {
  if (spec.segments < 1) {
    raise(StatusCode::kInvalidArgument, "segment count must be at least 1");
  }
  constexpr uint64_t kMaxStride = uint64_t{1} << 16;
  if (spec.n > ~uint64_t{0} / kMaxStride) {
    raise(StatusCode::kInvalidArgument, "segmented dataset too large");
  }
  std::mt19937_64 rng(spec.seed);
  std::uniform_int_distribution<uint64_t> stride_dist(1, kMaxStride);

  // Segment boundaries: sorted distinct cuts of [0, n). Duplicate cuts
  // just merge segments.
  std::vector<uint64_t> cuts{0, spec.n};
  if (spec.n > 1) {
    std::uniform_int_distribution<uint64_t> cut_dist(1, spec.n - 1);
    for (uint32_t i = 0; i + 1 < spec.segments; ++i) {
      cuts.push_back(cut_dist(rng));
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  }

  std::vector<uint64_t> keys;
  keys.reserve(spec.n);
  uint64_t next = 0;
  for (size_t s = 0; s + 1 < cuts.size(); ++s) {
    const uint64_t stride = stride_dist(rng);
    for (uint64_t i = cuts[s]; i < cuts[s + 1]; ++i) {
      keys.push_back(next);
      next += stride;
    }
  }
  return keys;
}

}  // namespace

std::vector<uint64_t> generate(const DatasetSpec& spec) {
  if (spec.n < 1) {
    raise(StatusCode::kInvalidArgument, "dataset size must be at least 1");
  }
  switch (spec.kind) {
    case DatasetKind::kUniformDense:
      return generate_dense(spec.n);
    case DatasetKind::kUniformSparse:
      return generate_sparse(spec);
    case DatasetKind::kLognormal:
      return generate_lognormal(spec);
    case DatasetKind::kSegmented:
      return generate_segmented(spec);
  }
  raise(StatusCode::kInvalidArgument, "unknown dataset kind");
}

void write_keys(const std::string& path, std::span<const uint64_t> keys) {
  if (!std::is_sorted(keys.begin(), keys.end())) {
    raise(StatusCode::kInvalidArgument, "keys must be written in sorted order");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    raise(StatusCode::kIoError, "cannot open " + path + " for writing");
  }
  const auto write_u64 = [&out](uint64_t value) {
    uint8_t bytes[8];
    for (int i = 0; i < 8; ++i) {
      bytes[i] = static_cast<uint8_t>(value >> (8 * i));
    }
    out.write(reinterpret_cast<const char*>(bytes), 8);
  };
  write_u64(keys.size());
  if constexpr (std::endian::native == std::endian::little) {
    out.write(reinterpret_cast<const char*>(keys.data()),
              static_cast<std::streamsize>(keys.size_bytes()));
  } else {
    for (uint64_t key : keys) {
      write_u64(key);
    }
  }
  if (!out) {
    raise(StatusCode::kIoError, "short write to " + path);
  }
}

std::vector<uint64_t> read_keys(const std::string& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) {
    raise(StatusCode::kIoError, "cannot open " + path + " for reading");
  }
  const uint64_t file_size = static_cast<uint64_t>(in.tellg());
  in.seekg(0);
  if (file_size < 8) {
    raise(StatusCode::kFormatError, "key file shorter than its header");
  }
  uint8_t header[8];
  in.read(reinterpret_cast<char*>(header), 8);
  uint64_t count = 0;
  for (int i = 0; i < 8; ++i) {
    count |= static_cast<uint64_t>(header[i]) << (8 * i);
  }
  if (file_size != 8 + count * 8) {
    raise(StatusCode::kFormatError,
          "key file size does not match its count header");
  }
  std::vector<uint64_t> keys(count);
  if constexpr (std::endian::native == std::endian::little) {
    in.read(reinterpret_cast<char*>(keys.data()),
            static_cast<std::streamsize>(count * 8));
  } else {
    std::vector<uint8_t> buffer(count * 8);
    in.read(reinterpret_cast<char*>(buffer.data()),
            static_cast<std::streamsize>(buffer.size()));
    for (uint64_t i = 0; i < count; ++i) {
      uint64_t value = 0;
      for (int b = 0; b < 8; ++b) {
        value |= static_cast<uint64_t>(buffer[i * 8 + b]) << (8 * b);
      }
      keys[i] = value;
    }
  }
  if (!in) {
    raise(StatusCode::kIoError, "short read from " + path);
  }
  if (!std::is_sorted(keys.begin(), keys.end())) {
    raise(StatusCode::kFormatError, "key file payload is not sorted");
  }
  return keys;
}

void write_metadata(const std::string& key_path, const DatasetSpec& spec) {
  const std::string path = key_path + ".meta";
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    raise(StatusCode::kIoError, "cannot open " + path + " for writing");
  }
  out << "kind=" << dataset_kind_name(spec.kind) << "\n"
      << "n=" << spec.n << "\n"
      << "seed=" << spec.seed << "\n";
  if (spec.kind == DatasetKind::kLognormal) {
    out << "mu=" << spec.lognormal_mu << "\n"
        << "sigma=" << spec.lognormal_sigma << "\n";
  }
  if (spec.kind == DatasetKind::kUniformSparse) {
    out << "universe_bits=" << spec.sparse_universe_bits << "\n";
  }
  if (spec.kind == DatasetKind::kSegmented) {
    out << "segments=" << spec.segments << "\n";
  }
  if (!out) {
    raise(StatusCode::kIoError, "short write to " + path);
  }
}

const char* dataset_kind_name(DatasetKind kind) {
  switch (kind) {
    case DatasetKind::kUniformDense:
      return "uniform_dense";
    case DatasetKind::kUniformSparse:
      return "uniform_sparse";
    case DatasetKind::kLognormal:
      return "lognormal";
    case DatasetKind::kSegmented:
      return "segmented";
  }
  return "unknown";
}

DatasetKind dataset_kind_from_name(std::string_view name) {
  if (name == "uniform_dense") return DatasetKind::kUniformDense;
  if (name == "uniform_sparse") return DatasetKind::kUniformSparse;
  if (name == "lognormal") return DatasetKind::kLognormal;
  if (name == "segmented") return DatasetKind::kSegmented;
  raise(StatusCode::kInvalidArgument,
        "unknown dataset kind: " + std::string(name));
}

}  // namespace rsidx
