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

#include "cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cloudpick/bench.hpp"
#include "cloudpick/catalog.hpp"
#include "cloudpick/error.hpp"
#include "cloudpick/server.hpp"
#include "cloudpick/session.hpp"

namespace cloudpick::cli {
namespace {

namespace fs = std::filesystem;

int code(ExitCode c) { return static_cast<int>(c); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, path, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out || !(out << text) || !out.flush()) {
    throw Error(ErrorKind::kIo, path.string(), "cannot write file");
  }
}

// "synthetic:MxN" generates a seeded catalog with the full cross product as
// D; anything else is a catalog file path.
Catalog resolve_catalog(const std::string& spec, std::uint64_t seed) {
  constexpr std::string_view kPrefix = "synthetic:";
  if (spec.rfind(kPrefix, 0) == 0) {
    const std::string dims = spec.substr(kPrefix.size());
    std::size_t m = 0, n = 0;
    char x = 0;
    std::istringstream parse(dims);
    if (!(parse >> m >> x >> n) || x != 'x' || !parse.eof()) {
      throw Error(ErrorKind::kUsage, "--catalog", "expected synthetic:<images>x<services>");
    }
    return generate_synthetic_catalog(m, n, seed);
  }
  return load_catalog_file(spec);
}

std::string catalog_id_for(const std::string& spec) {
  if (spec.rfind("synthetic:", 0) == 0) return "synthetic-" + spec.substr(10);
  return fs::path(spec).stem().string();
}

void report(std::ostream& err, const Error& e) {
  err << "error[" << code_name(e.exit_code()) << "] " << kind_name(e.kind());
  if (!e.path().empty()) err << " at " << e.path();
  err << ": " << e.detail() << "\n";
}

struct EvaluateArgs {
  std::string session_path;
  std::string catalog;
  std::string out;
  std::string mode;
  std::string relaxation;
  std::optional<std::size_t> top;
  std::uint64_t seed = 42;
  bool parallel = false;
  bool no_timestamp = false;
};

int cmd_evaluate(const EvaluateArgs& a, std::ostream& out, std::ostream& err) {
  SessionDocument session;
  std::string catalog_spec = a.catalog;
  if (!a.session_path.empty()) {
    session = parse_session_text(read_file(a.session_path));
    if (catalog_spec.empty() && !session.catalog.empty()) {
      fs::path p(session.catalog);
      if (p.is_relative() && session.catalog.rfind("synthetic:", 0) != 0) {
        p = fs::path(a.session_path).parent_path() / p;
      }
      catalog_spec = p.string();
    }
  }
  if (catalog_spec.empty()) {
    throw Error(ErrorKind::kUsage, "--catalog", "no catalog given on the command line or in the session");
  }
  if (!a.mode.empty()) {
    auto mode = parse_mode(a.mode);
    if (!mode) throw Error(ErrorKind::kUsage, "--mode", "expected two-phase or integrated");
    session.mode = *mode;
  }
  if (!a.relaxation.empty()) {
    auto policy = RelaxationPolicy::parse(a.relaxation);
    if (!policy) throw Error(ErrorKind::kUsage, "--relaxation", "expected auto or a level");
    session.relaxation = *policy;
  }

  const Catalog catalog = resolve_catalog(catalog_spec, a.seed);
  EvaluationOptions options;
  options.parallel = a.parallel;
  const ResultSet result = run_session(catalog, session, options);

  ResultJsonOptions json_options;
  json_options.max_combinations = a.top;
  if (!a.no_timestamp) json_options.timestamp = utc_timestamp();
  const std::string text = result_to_json(result, json_options).dump(2) + "\n";
  if (a.out.empty()) {
    out << text;
  } else {
    write_file(a.out, text);
  }

  if (result.mode == Mode::kTwoPhase) {
    err << "relaxation: images " << result.image_relaxation << ", services "
        << result.service_relaxation << "\n";
  } else {
    err << "relaxation: pairs " << result.pair_relaxation << "\n";
  }
  for (const auto& w : result.warnings) {
    err << "warning: consistency ratio " << w.warning.consistency_ratio << " above 0.1 at "
        << w.hierarchy << ":" << w.warning.node << "\n";
  }
  if (!result.best) {
    err << "no feasible combination\n";
    return code(ExitCode::kNoFeasibleCombination);
  }
  err << "best: " << result.best->image_id << " + " << result.best->service_id << " ("
      << result.best->combined_value << ")\n";
  return code(ExitCode::kOk);
}

int cmd_validate(const std::string& path, std::ostream& out) {
  const std::vector<Error> violations = validate_catalog_text(read_file(path));
  if (violations.empty()) {
    out << "OK\n";
    return code(ExitCode::kOk);
  }
  for (const auto& v : violations) {
    out << kind_name(v.kind()) << " at " << (v.path().empty() ? "/" : v.path()) << ": "
        << v.detail() << "\n";
  }
  out << violations.size() << (violations.size() == 1 ? " violation\n" : " violations\n");
  return code(ExitCode::kValidation);
}

struct BenchArgs {
  std::string config;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> reps;
  bool parallel = false;
};

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  BenchConfig cfg = a.config.empty() ? BenchConfig::defaults() : load_bench_config_file(a.config);
  if (a.seed) cfg.seed = *a.seed;
  if (a.reps) cfg.repetitions = *a.reps;
  if (a.parallel) cfg.parallel = true;
  cfg.validate();

  const fs::path dir(a.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::kIo, a.out_dir, "cannot create output directory");

  const BenchReport report = run_bench(cfg, [&err](const BenchRow& row) {
    char line[160];
    if (row.error) {
      std::snprintf(line, sizeof(line), "%5zu x %-5zu failed: %s\n", row.size.m, row.size.n,
                    row.error->c_str());
    } else {
      std::snprintf(line, sizeof(line),
                    "%5zu x %-5zu image %.6fs  service %.6fs  combination %.6fs  total %.6fs\n",
                    row.size.m, row.size.n, row.image_eval.mean, row.service_eval.mean,
                    row.combination.mean, row.total.mean);
    }
    err << line;
  });

  std::ostringstream csv;
  write_bench_csv(report, csv);
  write_file(dir / "bench_report.csv", csv.str());
  write_file(dir / "bench_summary.json", bench_summary(report).dump(2) + "\n");
  if (report.fit) {
    out << "quadratic fit: a2=" << report.fit->a2 << " a1=" << report.fit->a1
        << " a0=" << report.fit->a0 << " R^2=" << report.fit->r_squared << "\n";
  }
  out << "wrote " << (dir / "bench_report.csv").string() << " and "
      << (dir / "bench_summary.json").string() << "\n";
  return code(ExitCode::kOk);
}

int cmd_serve(const std::vector<std::string>& catalogs, std::uint64_t seed,
              const std::string& host, int port, std::ostream& err) {
  SessionStore store;
  for (const auto& spec : catalogs) {
    const std::string id = catalog_id_for(spec);
    store.add_catalog(id, resolve_catalog(spec, seed));
    err << "catalog '" << id << "' loaded from " << spec << "\n";
  }
  HttpServer server(store);
  err << "listening on http://" << host << ":" << port << "\n" << std::flush;
  if (!server.listen(host, port)) {
    throw Error(ErrorKind::kIo, host + ":" + std::to_string(port), "cannot bind address");
  }
  return code(ExitCode::kOk);
}

struct GenerateArgs {
  std::size_t images = 10;
  std::size_t services = 10;
  std::uint64_t seed = 42;
  double density = 1.0;
  int providers = 4;
  std::string out;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  SyntheticOptions options;
  options.dependency_density = a.density;
  options.provider_count = a.providers;
  const std::string text =
      save_catalog_text(generate_synthetic_catalog(a.images, a.services, a.seed, options));
  if (a.out.empty()) {
    out << text;
  } else {
    write_file(a.out, text);
  }
  return code(ExitCode::kOk);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ranks VM image and infrastructure service combinations.", "cloudpick"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "cloudpick 0.1.0");

  EvaluateArgs eval;
  auto* evaluate = app.add_subcommand("evaluate", "Run a session and write the ranked result");
  evaluate->add_option("--session", eval.session_path, "Session document (JSON)");
  evaluate->add_option("--catalog", eval.catalog,
                       "Catalog file or synthetic:<m>x<n>; overrides the session's catalog");
  evaluate->add_option("--out", eval.out, "Result file (default: stdout)");
  evaluate->add_option("--mode", eval.mode, "two-phase or integrated");
  evaluate->add_option("--relaxation", eval.relaxation, "auto or a fixed level");
  evaluate->add_option("--top", eval.top, "Emit at most this many combination rows");
  evaluate->add_option("--seed", eval.seed, "Seed for synthetic catalogs");
  evaluate->add_flag("--parallel", eval.parallel, "Score on worker threads");
  evaluate->add_flag("--no-timestamp", eval.no_timestamp, "Omit the generated_at field");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a catalog and list every violation");
  validate->add_option("--catalog,catalog", validate_path, "Catalog file")->required();

  BenchArgs bench_args;
  auto* bench = app.add_subcommand("bench", "Time the pipeline on synthetic catalogs");
  bench->add_option("--config", bench_args.config, "Bench config (JSON)");
  bench->add_option("--out", bench_args.out_dir, "Output directory")->capture_default_str();
  bench->add_option("--seed", bench_args.seed, "Override the config seed");
  bench->add_option("--reps", bench_args.reps, "Override the repetition count");
  bench->add_flag("--parallel", bench_args.parallel, "Use the parallel evaluation path");

  std::vector<std::string> serve_catalogs;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::uint64_t serve_seed = 42;
  auto* serve = app.add_subcommand("serve", "Start the HTTP server");
  serve->add_option("--catalog", serve_catalogs, "Catalog file or synthetic:<m>x<n>; repeatable")
      ->required();
  serve->add_option("--host", host)->capture_default_str();
  serve->add_option("--port", port)->capture_default_str();
  serve->add_option("--seed", serve_seed, "Seed for synthetic catalogs");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a seeded synthetic catalog");
  generate->add_option("--images", gen.images)->capture_default_str();
  generate->add_option("--services", gen.services)->capture_default_str();
  generate->add_option("--seed", gen.seed)->capture_default_str();
  generate->add_option("--density", gen.density, "Share of pairs in D")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  generate->add_option("--providers", gen.providers)->capture_default_str();
  generate->add_option("--out", gen.out, "Catalog file (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return code(ExitCode::kOk);
    }
    app.exit(e, out, err);
    return code(ExitCode::kUsage);
  }

  try {
    if (*evaluate) return cmd_evaluate(eval, out, err);
    if (*validate) return cmd_validate(validate_path, out);
    if (*bench) return cmd_bench(bench_args, out, err);
    if (*serve) return cmd_serve(serve_catalogs, serve_seed, host, port, err);
    if (*generate) return cmd_generate(gen, out);
  } catch (const Error& e) {
    report(err, e);
    return code(e.exit_code());
  } catch (const std::exception& e) {
    err << "error[internal_error] " << e.what() << "\n";
    return code(ExitCode::kInternal);
  }
  return code(ExitCode::kUsage);
}

}  // namespace cloudpick::cli
