// Copyright 2026 The cloudpick Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Timing harness: synthetic catalogs of growing size pushed through the
// two-phase pipeline, per-phase wall times, and a quadratic fit of total
// time against catalog size.

#ifndef CLOUDPICK_BENCH_HPP_
#define CLOUDPICK_BENCH_HPP_

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace cloudpick {

struct BenchSize {
  std::size_t m = 0;  // images
  std::size_t n = 0;  // services
  friend bool operator==(const BenchSize&, const BenchSize&) = default;
};

struct BenchConfig {
  std::vector<BenchSize> sizes;
  std::size_t repetitions = 20;
  std::uint64_t seed = 42;
  // No requirements and a full cross-product D. When false, D keeps about
  // 30% of the pairs and a pair of requirements filters both sides.
  bool skip_feasibility_filter = true;
  std::size_t warmups = 2;  // untimed runs per size
  bool parallel = false;

  // m = n from 100 to 1000 in steps of 100, 20 repetitions.
  static BenchConfig defaults();
  // repetitions >= 1, sizes non-empty, every m and n >= 1.
  void validate() const;
};

// Fields: sizes (list of [m, n] or of single counts, or {from, to, step}),
// repetitions, seed, skip_feasibility_filter, warmups, parallel. Missing
// fields keep their defaults.
BenchConfig parse_bench_config(const nlohmann::json& doc);
BenchConfig load_bench_config_file(const std::string& path);

struct PhaseStats {
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

struct BenchRow {
  BenchSize size;
  double generation_seconds = 0.0;
  PhaseStats image_eval;
  PhaseStats service_eval;
  PhaseStats combination;
  PhaseStats total;  // image + service + combination per repetition
  std::size_t combinations = 0;
  // Best pair of the last repetition; identical across runs with equal seeds.
  std::string best_image;
  std::string best_service;
  double best_value = 0.0;
  std::optional<std::string> error;  // set when this size could not be run
};

struct BenchSample {
  BenchSize size;
  std::string phase;
  std::size_t rep = 0;
  double seconds = 0.0;
};

struct QuadraticFit {
  double a2 = 0.0;
  double a1 = 0.0;
  double a0 = 0.0;
  double r_squared = 0.0;
};

struct BenchReport {
  BenchConfig config;
  std::vector<BenchRow> rows;
  std::vector<BenchSample> samples;
  // Mean total time against m; absent with fewer than 3 distinct m values.
  std::optional<QuadraticFit> fit;
};

using BenchProgress = std::function<void(const BenchRow&)>;

BenchReport run_bench(const BenchConfig& config, const BenchProgress& progress = {});

// Least squares t = a2 s^2 + a1 s + a0. Needs at least three distinct s.
QuadraticFit fit_quadratic(std::span<const std::pair<double, double>> points);

// Header `m,n,phase,rep,seconds`, one line per timed sample.
void write_bench_csv(const BenchReport& report, std::ostream& out);
nlohmann::ordered_json bench_summary(const BenchReport& report);

}  // namespace cloudpick

#endif  // CLOUDPICK_BENCH_HPP_
