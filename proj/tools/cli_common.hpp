#pragma once

#include <cstdint>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "nlohmann/json.hpp"
#include "phwo/cost_function.hpp"

namespace phwocli {

using json = nlohmann::ordered_json;

// Parameters shared by every subcommand; filled by CLI11 bindings in main.
struct ProblemSpec {
  std::string problem = "plateau";
  int n = 64;
  int l = 0;
  int u = 6;
  std::string cost_file;

  phwo::CostFunction build() const;
  json describe() const;
};

int worker_count();

// Runs f(i) for i in [0, count) on the worker pool. Results must be written
// to caller-owned slots indexed by i so merged output is order-independent.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& f);

// FNV-1a over the canonical parameter dump; embedded in every CSV payload.
std::uint64_t config_hash(const json& manifest);

struct CsvWriter {
  explicit CsvWriter(const std::string& path, std::uint64_t hash,
                     const std::vector<std::string>& columns);
  ~CsvWriter();
  void row(const std::vector<double>& values);
  void raw_row(const std::string& line);

  FILE* f = nullptr;
};

// Writes <out>.manifest.json next to the data files. The timestamp lives
// only here so data payloads stay byte-identical across reruns.
void write_manifest(const std::string& out_base, const json& manifest);

// "min:max:points_per_decade" -> GridSpec-ish triple
struct TfGrid {
  double t_min = 0.1;
  double t_max = 1000.0;
  int points_per_decade = 200;
};
TfGrid parse_tf_grid(const std::string& text);

std::vector<int> parse_int_list(const std::string& text);

[[noreturn]] void fail_json(const std::string& code, const std::string& message);

}  // namespace phwocli
