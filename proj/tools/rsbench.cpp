// Benchmark harness over the rsidx C API.
//
// Subcommands:
//   gen    generate a dataset and write it as a binary key file
//   build  build an index over a dataset and report build stats
//   bench  build + timed lookups for one index configuration
//   sweep  bench a grid of (error, radix_bits) spline configurations
//
// bench/sweep rows are CSV:
//   dataset,index,error,radix_bits,build_ns,avg_lookup_ns,min_lookup_ns,
//   size_bytes,knots,checksum
// Timings are reported only after the answers were verified against the
// binary-search oracle; any correctness failure exits nonzero.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rsidx.h"

namespace {

constexpr const char* kCsvHeader =
    "dataset,index,error,radix_bits,build_ns,avg_lookup_ns,min_lookup_ns,"
    "size_bytes,knots,checksum";

[[noreturn]] void fail(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  std::exit(1);
}

void check(rsidx_status status, const std::string& what) {
  if (status != RSIDX_OK) {
    fail(what + ": " + rsidx_status_name(status) + " (" + rsidx_last_error() +
         ")");
  }
}

std::string describe(rsidx_status status) {
  return std::string(rsidx_status_name(status)) + " (" + rsidx_last_error() +
         ")";
}

rsidx_dataset_kind dataset_kind_from_flag(const std::string& name) {
  if (name == "uniform_dense") return RSIDX_DATASET_UNIFORM_DENSE;
  if (name == "uniform_sparse") return RSIDX_DATASET_UNIFORM_SPARSE;
  if (name == "lognormal") return RSIDX_DATASET_LOGNORMAL;
  if (name == "segmented") return RSIDX_DATASET_SEGMENTED;
  fail("unknown dataset kind: " + name);
}

rsidx_index_kind index_kind_from_flag(const std::string& name) {
  if (name == "rs") return RSIDX_INDEX_RADIX_SPLINE;
  if (name == "bs") return RSIDX_INDEX_BINARY_SEARCH;
  if (name == "sampled") return RSIDX_INDEX_SAMPLED;
  fail("unknown index kind: " + name);
}

std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.2f", value);
  return buffer;
}

std::string format_hex(uint64_t value) {
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx",
                static_cast<unsigned long long>(value));
  return buffer;
}

void write_row(std::ostream& out, const std::string& dataset,
               const std::string& index, uint32_t error, uint32_t radix_bits,
               const rsidx_bench_result& result) {
  out << dataset << ',' << index << ',' << error << ',' << radix_bits << ','
      << result.build_ns << ',' << format_double(result.avg_lookup_ns) << ','
      << format_double(result.min_lookup_ns) << ',' << result.index_size_bytes
      << ',' << result.structure_count << ',' << format_hex(result.checksum)
      << "\n";
}

// CSV sink: a file when --csv was given, stdout otherwise.
class CsvOut {
 public:
  explicit CsvOut(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::trunc);
      if (!file_) {
        fail("cannot open " + path + " for writing");
      }
    }
    stream() << kCsvHeader << "\n";
  }

  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

// Generation parameters shared by gen and the inline-generation path of
// build/bench/sweep.
struct GenOptions {
  std::string kind = "lognormal";
  uint64_t n = 0;
  uint64_t seed = 1;
  double mu = 0.0;
  double sigma = 2.0;
  uint32_t universe_bits = 63;
  uint32_t segments = 16;
};

void add_gen_options(CLI::App* cmd, GenOptions& opts, const char* n_help) {
  cmd->add_option("--kind", opts.kind,
                  "Dataset kind: uniform_dense, uniform_sparse, lognormal, "
                  "segmented")
      ->check(CLI::IsMember(
          {"uniform_dense", "uniform_sparse", "lognormal", "segmented"}));
  cmd->add_option("--n", opts.n, n_help);
  cmd->add_option("--mu", opts.mu, "Lognormal mu");
  cmd->add_option("--sigma", opts.sigma, "Lognormal sigma");
  cmd->add_option("--universe-bits", opts.universe_bits,
                  "uniform_sparse key universe width in bits")
      ->check(CLI::Range(1, 64));
  cmd->add_option("--segments", opts.segments,
                  "Segment count for segmented datasets");
}

rsidx_dataset_spec to_spec(const GenOptions& opts) {
  rsidx_dataset_spec spec;
  rsidx_dataset_spec_init(&spec);
  spec.kind = dataset_kind_from_flag(opts.kind);
  spec.n = opts.n;
  spec.seed = opts.seed;
  spec.lognormal_mu = opts.mu;
  spec.lognormal_sigma = opts.sigma;
  spec.universe_bits = opts.universe_bits;
  spec.segments = opts.segments;
  return spec;
}

struct Dataset {
  std::unique_ptr<rsidx_dataset, void (*)(rsidx_dataset*)> handle{
      nullptr, rsidx_dataset_destroy};
  std::string label;

  const uint64_t* keys() const { return rsidx_dataset_keys(handle.get()); }
  uint64_t count() const { return rsidx_dataset_count(handle.get()); }
};

Dataset open_dataset(const std::string& path, const GenOptions& gen) {
  Dataset dataset;
  if (!path.empty()) {
    rsidx_dataset* handle = nullptr;
    check(rsidx_dataset_read(path.c_str(), &handle), "reading " + path);
    dataset.handle.reset(handle);
    dataset.label = path;
  } else if (gen.n > 0) {
    const rsidx_dataset_spec spec = to_spec(gen);
    rsidx_dataset* handle = nullptr;
    check(rsidx_dataset_generate(&spec, &handle), "generating dataset");
    dataset.handle.reset(handle);
    dataset.label = gen.kind + "-n" + std::to_string(gen.n) + "-s" +
                    std::to_string(gen.seed);
  } else {
    fail("provide --dataset <file> or --n <count> for inline generation");
  }
  return dataset;
}

uint64_t elapsed_ns(std::chrono::steady_clock::time_point start) {
  return static_cast<uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(
          std::chrono::steady_clock::now() - start)
          .count());
}

int run_gen(const GenOptions& opts, const std::string& out_path) {
  if (opts.n == 0) {
    fail("--n must be at least 1");
  }
  const rsidx_dataset_spec spec = to_spec(opts);
  rsidx_dataset* handle = nullptr;
  check(rsidx_dataset_generate(&spec, &handle), "generating dataset");
  const rsidx_status status = rsidx_dataset_write(handle, out_path.c_str(), 1);
  if (status != RSIDX_OK) {
    rsidx_dataset_destroy(handle);
    fail("writing " + out_path + ": " + describe(status));
  }
  std::cout << "wrote " << rsidx_dataset_count(handle) << " keys to "
            << out_path << "\n";
  rsidx_dataset_destroy(handle);
  return 0;
}

int run_build(const std::string& dataset_path, const GenOptions& gen,
              uint32_t error, uint32_t radix_bits,
              const std::string& index_out, const std::string& csv_path) {
  const Dataset dataset = open_dataset(dataset_path, gen);
  const auto start = std::chrono::steady_clock::now();
  rsidx_index* index = nullptr;
  check(rsidx_index_build(dataset.keys(), dataset.count(), error, radix_bits,
                          &index),
        "building index");
  rsidx_bench_result result{};
  result.build_ns = elapsed_ns(start);
  result.index_size_bytes = rsidx_index_size_bytes(index);
  result.structure_count = rsidx_index_knot_count(index);
  if (!index_out.empty()) {
    const rsidx_status status = rsidx_index_save(index, index_out.c_str());
    if (status != RSIDX_OK) {
      rsidx_index_destroy(index);
      fail("saving " + index_out + ": " + describe(status));
    }
  }
  rsidx_index_destroy(index);
  CsvOut csv(csv_path);
  write_row(csv.stream(), dataset.label, "rs", error, radix_bits, result);
  return 0;
}

int run_bench(const std::string& dataset_path, const GenOptions& gen,
              const std::string& index_name, rsidx_bench_config config,
              const std::string& csv_path) {
  const Dataset dataset = open_dataset(dataset_path, gen);
  config.kind = index_kind_from_flag(index_name);
  rsidx_bench_result result{};
  check(rsidx_bench_run(dataset.keys(), dataset.count(), &config, &result),
        "benchmarking " + index_name);
  const bool rs = config.kind == RSIDX_INDEX_RADIX_SPLINE;
  CsvOut csv(csv_path);
  write_row(csv.stream(), dataset.label, index_name,
            rs ? config.spline_error : 0, rs ? config.radix_bits : 0, result);
  return 0;
}

int run_sweep(const std::string& dataset_path, const GenOptions& gen,
              const std::vector<uint32_t>& errors,
              const std::vector<uint32_t>& radix_bits_grid,
              rsidx_bench_config config, const std::string& csv_path) {
  if (errors.empty() || radix_bits_grid.empty()) {
    fail("sweep grids must be nonempty");
  }
  const Dataset dataset = open_dataset(dataset_path, gen);
  CsvOut csv(csv_path);
  config.kind = RSIDX_INDEX_RADIX_SPLINE;
  int failures = 0;
  for (uint32_t error : errors) {
    for (uint32_t radix_bits : radix_bits_grid) {
      config.spline_error = error;
      config.radix_bits = radix_bits;
      rsidx_bench_result result{};
      const rsidx_status status = rsidx_bench_run(
          dataset.keys(), dataset.count(), &config, &result);
      if (status != RSIDX_OK) {
        std::cerr << "sweep cell error=" << error
                  << " radix_bits=" << radix_bits << " failed: "
                  << describe(status) << "\n";
        ++failures;
        continue;
      }
      write_row(csv.stream(), dataset.label, "rs", error, radix_bits, result);
    }
  }
  if (failures > 0) {
    std::cerr << failures << " sweep cell(s) failed\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Learned-index benchmark harness (rsidx)"};
  app.require_subcommand(1);

  // gen
  auto* gen_cmd = app.add_subcommand("gen", "Generate a dataset key file");
  GenOptions gen_opts;
  std::string gen_out;
  add_gen_options(gen_cmd, gen_opts, "Number of keys to generate");
  gen_cmd->add_option("--seed", gen_opts.seed, "Generation seed");
  gen_cmd->add_option("--out", gen_out, "Output key file path")->required();

  // shared bench-ish options
  const auto add_common = [](CLI::App* cmd, std::string& dataset_path,
                             GenOptions& gen, std::string& csv_path) {
    cmd->add_option("--dataset", dataset_path, "Key file to benchmark");
    add_gen_options(cmd, gen, "Inline-generate this many keys instead of "
                              "reading --dataset");
    cmd->add_option("--gen-seed", gen.seed, "Inline generation seed");
    cmd->add_option("--csv", csv_path, "Write CSV here instead of stdout");
  };

  // build
  auto* build_cmd =
      app.add_subcommand("build", "Build an index and report build stats");
  std::string build_dataset, build_csv, build_index_out;
  GenOptions build_gen;
  uint32_t build_error = 32;
  uint32_t build_radix_bits = 18;
  add_common(build_cmd, build_dataset, build_gen, build_csv);
  build_cmd->add_option("--error", build_error, "Spline error bound");
  build_cmd->add_option("--radix-bits", build_radix_bits, "Radix table bits")
      ->check(CLI::Range(1, 30));
  build_cmd->add_option("--out", build_index_out,
                        "Also save the serialized index here");

  // bench
  auto* bench_cmd = app.add_subcommand(
      "bench", "Build + timed lookups for one configuration");
  std::string bench_dataset, bench_csv;
  GenOptions bench_gen;
  std::string bench_index = "rs";
  rsidx_bench_config bench_config;
  rsidx_bench_config_init(&bench_config);
  bool bench_absent = false;
  add_common(bench_cmd, bench_dataset, bench_gen, bench_csv);
  bench_cmd->add_option("--index", bench_index, "Index kind: rs, bs, sampled")
      ->check(CLI::IsMember({"rs", "bs", "sampled"}));
  bench_cmd->add_option("--error", bench_config.spline_error,
                        "Spline error bound");
  bench_cmd
      ->add_option("--radix-bits", bench_config.radix_bits, "Radix table bits")
      ->check(CLI::Range(1, 30));
  bench_cmd->add_option("--stride", bench_config.stride,
                        "Sampled-index stride");
  bench_cmd->add_option("--probes", bench_config.probe_count,
                        "Number of lookups to time");
  bench_cmd->add_option("--seed", bench_config.probe_seed, "Probe seed");
  bench_cmd->add_option("--reps", bench_config.repetitions,
                        "Timed repetitions of the probe loop");
  bench_cmd->add_flag("--include-absent", bench_absent,
                      "Mix in uniform random u64 probes");

  // sweep
  auto* sweep_cmd = app.add_subcommand(
      "sweep", "Bench a grid of spline (error, radix_bits) cells");
  std::string sweep_dataset, sweep_csv;
  GenOptions sweep_gen;
  std::vector<uint32_t> sweep_errors{2, 4, 8, 16, 32, 64, 128, 256};
  std::vector<uint32_t> sweep_radix_bits{10, 12, 14, 16, 18, 20, 22, 25};
  rsidx_bench_config sweep_config;
  rsidx_bench_config_init(&sweep_config);
  bool sweep_absent = false;
  add_common(sweep_cmd, sweep_dataset, sweep_gen, sweep_csv);
  sweep_cmd->add_option("--errors", sweep_errors, "Spline error grid")
      ->delimiter(',');
  sweep_cmd
      ->add_option("--radix-bits-grid", sweep_radix_bits, "Radix bits grid")
      ->delimiter(',');
  sweep_cmd->add_option("--probes", sweep_config.probe_count,
                        "Number of lookups to time per cell");
  sweep_cmd->add_option("--seed", sweep_config.probe_seed, "Probe seed");
  sweep_cmd->add_option("--reps", sweep_config.repetitions,
                        "Timed repetitions of the probe loop");
  sweep_cmd->add_flag("--include-absent", sweep_absent,
                      "Mix in uniform random u64 probes");

  CLI11_PARSE(app, argc, argv);

  if (gen_cmd->parsed()) {
    return run_gen(gen_opts, gen_out);
  }
  if (build_cmd->parsed()) {
    return run_build(build_dataset, build_gen, build_error, build_radix_bits,
                     build_index_out, build_csv);
  }
  if (bench_cmd->parsed()) {
    bench_config.include_absent = bench_absent ? 1 : 0;
    return run_bench(bench_dataset, bench_gen, bench_index, bench_config,
                     bench_csv);
  }
  if (sweep_cmd->parsed()) {
    sweep_config.include_absent = sweep_absent ? 1 : 0;
    return run_sweep(sweep_dataset, sweep_gen, sweep_errors, sweep_radix_bits,
                     sweep_config, sweep_csv);
  }
  return 0;
}
