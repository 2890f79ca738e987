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

#include "cloudpick/bench.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <new>
#include <ostream>
#include <set>
#include <sstream>

#include "cloudpick/catalog.hpp"
#include "cloudpick/error.hpp"
#include "cloudpick/evaluation.hpp"
#include "cloudpick/hierarchy.hpp"
#include "cloudpick/requirements.hpp"

namespace cloudpick {

using nlohmann::json;
using nlohmann::ordered_json;

BenchConfig BenchConfig::defaults() {
  BenchConfig cfg;
  for (std::size_t s = 100; s <= 1000; s += 100) cfg.sizes.push_back({s, s});
  return cfg;
}

void BenchConfig::validate() const {
  if (sizes.empty()) throw Error(ErrorKind::kInvalidArgument, "/sizes", "sizes must not be empty");
  if (repetitions < 1) {
    throw Error(ErrorKind::kInvalidArgument, "/repetitions", "repetitions must be at least 1");
  }
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i].m < 1 || sizes[i].n < 1) {
      throw Error(ErrorKind::kInvalidArgument, "/sizes/" + std::to_string(i),
                  "image and service counts must be at least 1");
    }
  }
}

namespace {

std::size_t count_field(const json& node, const std::string& path) {
  if (!node.is_number_integer() || node.get<std::int64_t>() < 0) {
    throw Error(ErrorKind::kSchema, path, "expected a non-negative integer");
  }
  return node.get<std::size_t>();
}

std::vector<BenchSize> parse_sizes(const json& node) {
  std::vector<BenchSize> sizes;
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) {
      if (key != "from" && key != "to" && key != "step") {
        throw Error(ErrorKind::kSchema, "/sizes/" + key, "unknown field '" + key + "'");
      }
    }
    const auto get = [&](const char* key, std::size_t fallback) {
      auto it = node.find(key);
      return it == node.end() ? fallback : count_field(*it, std::string("/sizes/") + key);
    };
    const std::size_t from = get("from", 100);
    const std::size_t to = get("to", 1000);
    const std::size_t step = get("step", 100);
    if (step == 0) throw Error(ErrorKind::kInvalidArgument, "/sizes/step", "step must be positive");
    if (to < from) throw Error(ErrorKind::kInvalidArgument, "/sizes/to", "to is below from");
    for (std::size_t s = from; s <= to; s += step) sizes.push_back({s, s});
    return sizes;
  }
  if (!node.is_array()) {
    throw Error(ErrorKind::kSchema, "/sizes", "expected a list or {from, to, step}");
  }
  for (std::size_t i = 0; i < node.size(); ++i) {
    const std::string path = "/sizes/" + std::to_string(i);
    const json& entry = node[i];
    if (entry.is_array()) {
      if (entry.size() != 2) throw Error(ErrorKind::kSchema, path, "expected [m, n]");
      sizes.push_back({count_field(entry[0], path + "/0"), count_field(entry[1], path + "/1")});
    } else {
      const std::size_t s = count_field(entry, path);
      sizes.push_back({s, s});
    }
  }
  return sizes;
}

}  // namespace

BenchConfig parse_bench_config(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorKind::kSchema, "", "expected a bench config object");
  BenchConfig cfg = BenchConfig::defaults();
  for (const auto& [key, value] : doc.items()) {
    const std::string path = "/" + key;
    if (key == "sizes") {
      cfg.sizes = parse_sizes(value);
    } else if (key == "repetitions") {
      cfg.repetitions = count_field(value, path);
    } else if (key == "seed") {
      cfg.seed = count_field(value, path);
    } else if (key == "warmups") {
      cfg.warmups = count_field(value, path);
    } else if (key == "skip_feasibility_filter" || key == "parallel") {
      if (!value.is_boolean()) throw Error(ErrorKind::kSchema, path, "expected true or false");
      (key == "parallel" ? cfg.parallel : cfg.skip_feasibility_filter) = value.get<bool>();
    } else {
      throw Error(ErrorKind::kSchema, path, "unknown field '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

BenchConfig load_bench_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, path, "cannot open bench config");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParse, "", e.what());
  }
  return parse_bench_config(doc);
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

PhaseStats stats(const std::vector<double>& xs) {
  PhaseStats s;
  if (xs.empty()) return s;
  s.min = *std::min_element(xs.begin(), xs.end());
  s.max = *std::max_element(xs.begin(), xs.end());
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  return s;
}

std::vector<Requirement> filtering_requirements(bool skip) {
  if (skip) return {};
  return {{EntityKind::kVmImage, std::string(attr::kPopularity), Min{20.0}},
          {EntityKind::kInfraService, std::string(attr::kUptime), Min{30.0}}};
}

void run_size(const BenchConfig& cfg, BenchRow& row, std::vector<BenchSample>& samples) {
  const auto gen_start = Clock::now();
  SyntheticOptions synth;
  synth.dependency_density = cfg.skip_feasibility_filter ? 1.0 : 0.3;
  const Catalog catalog = generate_synthetic_catalog(row.size.m, row.size.n, cfg.seed, synth);
  row.generation_seconds = seconds_since(gen_start);
  samples.push_back({row.size, "generation", 0, row.generation_seconds});

  const auto reqs = filtering_requirements(cfg.skip_feasibility_filter);
  std::vector<Requirement> image_reqs, service_reqs;
  for (const auto& r : reqs) {
    (r.target_kind == EntityKind::kVmImage ? image_reqs : service_reqs).push_back(r);
  }
  const GoalHierarchy image_h = default_image_hierarchy();
  const GoalHierarchy service_h = default_service_hierarchy();
  const CombinationWeights weights;
  EvaluationOptions options;
  options.parallel = cfg.parallel;

  std::vector<double> t_image, t_service, t_combo, t_total;
  for (std::size_t run = 0; run < cfg.warmups + cfg.repetitions; ++run) {
    auto start = Clock::now();
    const auto images = evaluate_images(catalog, image_reqs, image_h, 0, options);
    const double ti = seconds_since(start);

    start = Clock::now();
    const auto services = evaluate_services(catalog, service_reqs, service_h, 0, options);
    const double ts = seconds_since(start);

    start = Clock::now();
    const auto combos = combine(images, services, catalog.dependencies(), weights, options);
    const auto best = best_combination(combos);
    const double tc = seconds_since(start);

    if (run < cfg.warmups) continue;
    const std::size_t rep = run - cfg.warmups;
    t_image.push_back(ti);
    t_service.push_back(ts);
    t_combo.push_back(tc);
    t_total.push_back(ti + ts + tc);
    samples.push_back({row.size, "image_eval", rep, ti});
    samples.push_back({row.size, "service_eval", rep, ts});
    samples.push_back({row.size, "combination", rep, tc});
    samples.push_back({row.size, "total", rep, ti + ts + tc});

    row.combinations = combos.size();
    row.best_image = best ? best->image_id : "";
    row.best_service = best ? best->service_id : "";
    row.best_value = best ? best->combined_value : 0.0;
  }
  row.image_eval = stats(t_image);
  row.service_eval = stats(t_service);
  row.combination = stats(t_combo);
  row.total = stats(t_total);
}

}  // namespace

BenchReport run_bench(const BenchConfig& config, const BenchProgress& progress) {
  config.validate();
  BenchReport report;
  report.config = config;
  for (const BenchSize& size : config.sizes) {
    BenchRow row;
    row.size = size;
    std::vector<BenchSample> samples;
    try {
      run_size(config, row, samples);
      report.samples.insert(report.samples.end(), samples.begin(), samples.end());
    } catch (const std::bad_alloc&) {
      row = BenchRow{};
      row.size = size;
      row.error = "out of memory";
    } catch (const std::exception& e) {
      row = BenchRow{};
      row.size = size;
      row.error = e.what();
    }
    if (progress) progress(row);
    report.rows.push_back(std::move(row));
  }

  std::vector<std::pair<double, double>> points;
  std::set<std::size_t> distinct;
  for (const auto& row : report.rows) {
    if (row.error) continue;
    points.emplace_back(static_cast<double>(row.size.m), row.total.mean);
    distinct.insert(row.size.m);
  }
  if (distinct.size() >= 3) report.fit = fit_quadratic(points);
  return report;
}

QuadraticFit fit_quadratic(std::span<const std::pair<double, double>> points) {
  std::set<double> distinct;
  for (const auto& [s, t] : points) {
    if (!std::isfinite(s) || !std::isfinite(t)) {
      throw Error(ErrorKind::kInvalidArgument, "", "fit points must be finite");
    }
    distinct.insert(s);
  }
  if (distinct.size() < 3) {
    throw Error(ErrorKind::kInvalidArgument, "",
                "quadratic fit needs at least three distinct sizes");
  }

  // Scale s into [-1, 1] for conditioning, then map the coefficients back.
  double scale = 0.0;
  for (const auto& p : points) scale = std::max(scale, std::abs(p.first));
  const auto rows = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd x(rows, 3);
  Eigen::VectorXd y(rows);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const double u = points[static_cast<std::size_t>(r)].first / scale;
    x(r, 0) = u * u;
    x(r, 1) = u;
    x(r, 2) = 1.0;
    y(r) = points[static_cast<std::size_t>(r)].second;
  }
  const Eigen::Vector3d c = x.colPivHouseholderQr().solve(y);

  QuadraticFit fit;
  fit.a2 = c(0) / (scale * scale);
  fit.a1 = c(1) / scale;
  fit.a0 = c(2);

  const double mean = y.mean();
  const double ss_tot = (y.array() - mean).square().sum();
  const double ss_res = (y - x * c).squaredNorm();
  if (ss_tot <= 0.0) {
    fit.r_squared = ss_res <= 1e-24 ? 1.0 : 0.0;
  } else {
    fit.r_squared = std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
  }
  return fit;
}

void write_bench_csv(const BenchReport& report, std::ostream& out) {
  out << "m,n,phase,rep,seconds\n";
  char buffer[64];
  for (const auto& s : report.samples) {
    std::snprintf(buffer, sizeof(buffer), "%.9f", s.seconds);
    out << s.size.m << ',' << s.size.n << ',' << s.phase << ',' << s.rep << ',' << buffer << '\n';
  }
}

namespace {

ordered_json stats_json(const PhaseStats& s) {
  return {{"mean", s.mean}, {"min", s.min}, {"max", s.max}};
}

}  // namespace

ordered_json bench_summary(const BenchReport& report) {
  ordered_json doc;
  const BenchConfig& cfg = report.config;
  ordered_json sizes = ordered_json::array();
  for (const auto& s : cfg.sizes) sizes.push_back({s.m, s.n});
  doc["config"] = {{"sizes", sizes},
                   {"repetitions", cfg.repetitions},
                   {"warmups", cfg.warmups},
                   {"seed", cfg.seed},
                   {"skip_feasibility_filter", cfg.skip_feasibility_filter},
                   {"parallel", cfg.parallel}};
  ordered_json rows = ordered_json::array();
  for (const auto& r : report.rows) {
    ordered_json row;
    row["m"] = r.size.m;
    row["n"] = r.size.n;
    if (r.error) {
      row["error"] = *r.error;
    } else {
      row["generation_seconds"] = r.generation_seconds;
      row["image_eval"] = stats_json(r.image_eval);
      row["service_eval"] = stats_json(r.service_eval);
      row["combination"] = stats_json(r.combination);
      row["total"] = stats_json(r.total);
      row["combinations"] = r.combinations;
      row["best"] = {{"image", r.best_image},
                     {"service", r.best_service},
                     {"value", r.best_value}};
    }
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  if (report.fit) {
    doc["fit"] = {{"model", "total_seconds = a2*m^2 + a1*m + a0"},
                  {"a2", report.fit->a2},
                  {"a1", report.fit->a1},
                  {"a0", report.fit->a0},
                  {"r_squared", report.fit->r_squared}};
  } else {
    doc["fit"] = nullptr;
  }
  return doc;
}

}  // namespace cloudpick
