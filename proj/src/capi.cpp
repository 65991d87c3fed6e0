#include "rsidx.h"

#include <new>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "baselines.hpp"
#include "bench.hpp"
#include "datasets.hpp"
#include "error.hpp"
#include "index.hpp"

struct rsidx_builder {
  rsidx::Builder impl;
};

struct rsidx_index {
  rsidx::RadixSpline impl;
};

struct rsidx_sampled {
  rsidx::SampledIndex impl;
};

struct rsidx_dataset {
  std::vector<uint64_t> keys;
  std::optional<rsidx::DatasetSpec> spec;
};

namespace {

thread_local std::string g_last_error;

rsidx_status to_status(rsidx::StatusCode code) {
  switch (code) {
    case rsidx::StatusCode::kOk:
      return RSIDX_OK;
    case rsidx::StatusCode::kInvalidArgument:
      return RSIDX_ERR_INVALID_ARGUMENT;
    case rsidx::StatusCode::kOrderViolation:
      return RSIDX_ERR_ORDER_VIOLATION;
    case rsidx::StatusCode::kDomainViolation:
      return RSIDX_ERR_DOMAIN_VIOLATION;
    case rsidx::StatusCode::kEmptyInput:
      return RSIDX_ERR_EMPTY_INPUT;
    case rsidx::StatusCode::kCapacityExceeded:
      return RSIDX_ERR_CAPACITY_EXCEEDED;
    case rsidx::StatusCode::kIoError:
      return RSIDX_ERR_IO;
    case rsidx::StatusCode::kFormatError:
      return RSIDX_ERR_FORMAT;
    case rsidx::StatusCode::kChecksumMismatch:
      return RSIDX_ERR_CHECKSUM_MISMATCH;
    case rsidx::StatusCode::kInternal:
      return RSIDX_ERR_INTERNAL;
  }
  return RSIDX_ERR_INTERNAL;
}

template <typename Fn>
rsidx_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return RSIDX_OK;
  } catch (const rsidx::Error& error) {
    g_last_error = error.what();
    return to_status(error.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return RSIDX_ERR_NO_MEMORY;
  } catch (const std::exception& error) {
    g_last_error = error.what();
    return RSIDX_ERR_INTERNAL;
  }
}

rsidx_status invalid(const char* message) {
  g_last_error = message;
  return RSIDX_ERR_INVALID_ARGUMENT;
}

std::span<const uint64_t> key_span(const uint64_t* keys, uint64_t count) {
  return keys == nullptr ? std::span<const uint64_t>()
                         : std::span<const uint64_t>(keys, count);
}

}  // namespace

extern "C" {

const char* rsidx_version(void) { return "1.0.0"; }

const char* rsidx_status_name(rsidx_status status) {
  switch (status) {
    case RSIDX_OK:
      return "ok";
    case RSIDX_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case RSIDX_ERR_ORDER_VIOLATION:
      return "order violation";
    case RSIDX_ERR_DOMAIN_VIOLATION:
      return "domain violation";
    case RSIDX_ERR_EMPTY_INPUT:
      return "empty input";
    case RSIDX_ERR_CAPACITY_EXCEEDED:
      return "capacity exceeded";
    case RSIDX_ERR_IO:
      return "io error";
    case RSIDX_ERR_FORMAT:
      return "format error";
    case RSIDX_ERR_CHECKSUM_MISMATCH:
      return "checksum mismatch";
    case RSIDX_ERR_INTERNAL:
      return "internal error";
    case RSIDX_ERR_NO_MEMORY:
      return "out of memory";
  }
  return "unknown status";
}

const char* rsidx_last_error(void) { return g_last_error.c_str(); }

rsidx_status rsidx_builder_create(uint64_t min_key, uint64_t max_key,
                                  uint32_t spline_error, uint32_t radix_bits,
                                  rsidx_builder** out_builder) {
  if (out_builder == nullptr) {
    return invalid("out_builder is null");
  }
  return guarded([&] {
    *out_builder = new rsidx_builder{
        rsidx::Builder(min_key, max_key, spline_error, radix_bits)};
  });
}

rsidx_status rsidx_builder_add_key(rsidx_builder* builder, uint64_t key) {
  if (builder == nullptr) {
    return invalid("builder is null");
  }
  return guarded([&] { builder->impl.add_key(key); });
}

rsidx_status rsidx_builder_add_keys(rsidx_builder* builder,
                                    const uint64_t* keys, uint64_t count) {
  if (builder == nullptr) {
    return invalid("builder is null");
  }
  if (keys == nullptr && count > 0) {
    return invalid("keys is null");
  }
  return guarded([&] {
    for (uint64_t i = 0; i < count; ++i) {
      builder->impl.add_key(keys[i]);
    }
  });
}

rsidx_status rsidx_builder_finalize(rsidx_builder* builder,
                                    rsidx_index** out_index) {
  if (builder == nullptr) {
    return invalid("builder is null");
  }
  if (out_index == nullptr) {
    return invalid("out_index is null");
  }
  return guarded(
      [&] { *out_index = new rsidx_index{builder->impl.finalize()}; });
}

void rsidx_builder_destroy(rsidx_builder* builder) { delete builder; }

rsidx_status rsidx_index_build(const uint64_t* keys, uint64_t count,
                               uint32_t spline_error, uint32_t radix_bits,
                               rsidx_index** out_index) {
  if (out_index == nullptr) {
    return invalid("out_index is null");
  }
  if (keys == nullptr && count > 0) {
    return invalid("keys is null");
  }
  return guarded([&] {
    *out_index = new rsidx_index{
        rsidx::build_index(key_span(keys, count), spline_error, radix_bits)};
  });
}

rsidx_status rsidx_index_save(const rsidx_index* index, const char* path) {
  if (index == nullptr) {
    return invalid("index is null");
  }
  if (path == nullptr) {
    return invalid("path is null");
  }
  return guarded([&] { index->impl.save(path); });
}

rsidx_status rsidx_index_load(const char* path, rsidx_index** out_index) {
  if (path == nullptr) {
    return invalid("path is null");
  }
  if (out_index == nullptr) {
    return invalid("out_index is null");
  }
  return guarded(
      [&] { *out_index = new rsidx_index{rsidx::RadixSpline::load(path)}; });
}

void rsidx_index_destroy(rsidx_index* index) { delete index; }

uint64_t rsidx_index_num_keys(const rsidx_index* index) {
  return index == nullptr ? 0 : index->impl.num_keys();
}

uint64_t rsidx_index_knot_count(const rsidx_index* index) {
  return index == nullptr ? 0 : index->impl.knot_count();
}

uint64_t rsidx_index_size_bytes(const rsidx_index* index) {
  return index == nullptr ? 0 : index->impl.size_in_bytes();
}

uint64_t rsidx_index_min_key(const rsidx_index* index) {
  return index == nullptr ? 0 : index->impl.min_key();
}

uint64_t rsidx_index_max_key(const rsidx_index* index) {
  return index == nullptr ? 0 : index->impl.max_key();
}

uint32_t rsidx_index_spline_error(const rsidx_index* index) {
  return index == nullptr ? 0 : index->impl.spline_error();
}

uint32_t rsidx_index_radix_bits(const rsidx_index* index) {
  return index == nullptr ? 0 : index->impl.radix_bits();
}

rsidx_status rsidx_index_estimate(const rsidx_index* index, uint64_t key,
                                  double* out_position) {
  if (index == nullptr) {
    return invalid("index is null");
  }
  if (out_position == nullptr) {
    return invalid("out_position is null");
  }
  return guarded([&] { *out_position = index->impl.estimate_position(key); });
}

rsidx_status rsidx_index_search_bound(const rsidx_index* index, uint64_t key,
                                      rsidx_search_bound* out_bound) {
  if (index == nullptr) {
    return invalid("index is null");
  }
  if (out_bound == nullptr) {
    return invalid("out_bound is null");
  }
  return guarded([&] {
    const rsidx::SearchBound bound = index->impl.search_bound(key);
    out_bound->begin = bound.begin;
    out_bound->end = bound.end;
  });
}

rsidx_status rsidx_index_lower_bound(const rsidx_index* index,
                                     const uint64_t* keys, uint64_t count,
                                     uint64_t key, uint64_t* out_position) {
  if (index == nullptr) {
    return invalid("index is null");
  }
  if (keys == nullptr && count > 0) {
    return invalid("keys is null");
  }
  if (out_position == nullptr) {
    return invalid("out_position is null");
  }
  return guarded([&] {
    *out_position = index->impl.lookup_lower_bound(key_span(keys, count), key);
  });
}

uint64_t rsidx_bs_lower_bound(const uint64_t* keys, uint64_t count,
                              uint64_t key) {
  return rsidx::bs_lower_bound(key_span(keys, count), key);
}

rsidx_status rsidx_sampled_create(const uint64_t* keys, uint64_t count,
                                  uint32_t stride, rsidx_sampled** out_index) {
  if (out_index == nullptr) {
    return invalid("out_index is null");
  }
  if (keys == nullptr && count > 0) {
    return invalid("keys is null");
  }
  return guarded([&] {
    *out_index =
        new rsidx_sampled{rsidx::SampledIndex(key_span(keys, count), stride)};
  });
}

rsidx_status rsidx_sampled_lower_bound(const rsidx_sampled* index,
                                       const uint64_t* keys, uint64_t count,
                                       uint64_t key, uint64_t* out_position) {
  if (index == nullptr) {
    return invalid("index is null");
  }
  if (keys == nullptr && count > 0) {
    return invalid("keys is null");
  }
  if (out_position == nullptr) {
    return invalid("out_position is null");
  }
  return guarded([&] {
    *out_position = index->impl.lower_bound(key_span(keys, count), key);
  });
}

uint64_t rsidx_sampled_size_bytes(const rsidx_sampled* index) {
  return index == nullptr ? 0 : index->impl.size_in_bytes();
}

uint64_t rsidx_sampled_count(const rsidx_sampled* index) {
  return index == nullptr ? 0 : index->impl.sample_count();
}

void rsidx_sampled_destroy(rsidx_sampled* index) { delete index; }

void rsidx_dataset_spec_init(rsidx_dataset_spec* spec) {
  if (spec == nullptr) {
    return;
  }
  const rsidx::DatasetSpec defaults;
  spec->kind = RSIDX_DATASET_LOGNORMAL;
  spec->n = defaults.n;
  spec->seed = defaults.seed;
  spec->lognormal_mu = defaults.lognormal_mu;
  spec->lognormal_sigma = defaults.lognormal_sigma;
  spec->universe_bits = defaults.sparse_universe_bits;
  spec->segments = defaults.segments;
}

rsidx_status rsidx_dataset_generate(const rsidx_dataset_spec* spec,
                                    rsidx_dataset** out_dataset) {
  if (spec == nullptr) {
    return invalid("spec is null");
  }
  if (out_dataset == nullptr) {
    return invalid("out_dataset is null");
  }
  const int kind = static_cast<int>(spec->kind);
  if (kind < RSIDX_DATASET_UNIFORM_DENSE || kind > RSIDX_DATASET_SEGMENTED) {
    return invalid("unknown dataset kind");
  }
  return guarded([&] {
    rsidx::DatasetSpec core;
    core.kind = static_cast<rsidx::DatasetKind>(spec->kind);
    core.n = spec->n;
    core.seed = spec->seed;
    core.lognormal_mu = spec->lognormal_mu;
    core.lognormal_sigma = spec->lognormal_sigma;
    core.sparse_universe_bits = spec->universe_bits;
    core.segments = spec->segments;
    *out_dataset = new rsidx_dataset{rsidx::generate(core), core};
  });
}

rsidx_status rsidx_dataset_read(const char* path,
                                rsidx_dataset** out_dataset) {
  if (path == nullptr) {
    return invalid("path is null");
  }
  if (out_dataset == nullptr) {
    return invalid("out_dataset is null");
  }
  return guarded([&] {
    *out_dataset = new rsidx_dataset{rsidx::read_keys(path), std::nullopt};
  });
}

rsidx_status rsidx_dataset_write(const rsidx_dataset* dataset,
                                 const char* path, int write_metadata) {
  if (dataset == nullptr) {
    return invalid("dataset is null");
  }
  if (path == nullptr) {
    return invalid("path is null");
  }
  return guarded([&] {
    rsidx::write_keys(path, dataset->keys);
    if (write_metadata != 0) {
      if (!dataset->spec.has_value()) {
        rsidx::raise(rsidx::StatusCode::kInvalidArgument,
                     "dataset has no generation spec to record");
      }
      rsidx::write_metadata(path, *dataset->spec);
    }
  });
}

const uint64_t* rsidx_dataset_keys(const rsidx_dataset* dataset) {
  return dataset == nullptr ? nullptr : dataset->keys.data();
}

uint64_t rsidx_dataset_count(const rsidx_dataset* dataset) {
  return dataset == nullptr ? 0 : dataset->keys.size();
}

void rsidx_dataset_destroy(rsidx_dataset* dataset) { delete dataset; }

void rsidx_bench_config_init(rsidx_bench_config* config) {
  if (config == nullptr) {
    return;
  }
  const rsidx::BenchConfig defaults;
  config->kind = RSIDX_INDEX_RADIX_SPLINE;
  config->spline_error = defaults.spline_error;
  config->radix_bits = defaults.radix_bits;
  config->stride = defaults.stride;
  config->probe_count = defaults.probe_count;
  config->probe_seed = defaults.probe_seed;
  config->repetitions = defaults.repetitions;
  config->include_absent = defaults.include_absent ? 1 : 0;
}

rsidx_status rsidx_bench_run(const uint64_t* keys, uint64_t count,
                             const rsidx_bench_config* config,
                             rsidx_bench_result* out_result) {
  if (keys == nullptr && count > 0) {
    return invalid("keys is null");
  }
  if (config == nullptr) {
    return invalid("config is null");
  }
  if (out_result == nullptr) {
    return invalid("out_result is null");
  }
  const int kind = static_cast<int>(config->kind);
  if (kind < RSIDX_INDEX_RADIX_SPLINE || kind > RSIDX_INDEX_SAMPLED) {
    return invalid("unknown index kind");
  }
  return guarded([&] {
    rsidx::BenchConfig core;
    core.kind = static_cast<rsidx::IndexKind>(config->kind);
    core.spline_error = config->spline_error;
    core.radix_bits = config->radix_bits;
    core.stride = config->stride;
    core.probe_count = config->probe_count;
    core.probe_seed = config->probe_seed;
    core.repetitions = config->repetitions;
    core.include_absent = config->include_absent != 0;
    const rsidx::BenchResult result =
        rsidx::run_bench(key_span(keys, count), core);
    out_result->build_ns = result.build_ns;
    out_result->avg_lookup_ns = result.avg_lookup_ns;
    out_result->min_lookup_ns = result.min_lookup_ns;
    out_result->index_size_bytes = result.index_size_bytes;
    out_result->structure_count = result.structure_count;
    out_result->checksum = result.checksum;
  });
}

}  // extern "C"
