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

// Thin bindings. Structured documents cross the boundary as JSON text; the
// Python package decodes them into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

#include "cloudpick/ahp.hpp"
#include "cloudpick/bench.hpp"
#include "cloudpick/catalog.hpp"
#include "cloudpick/error.hpp"
#include "cloudpick/session.hpp"

namespace py = pybind11;
using namespace cloudpick;

namespace {

py::dict error_dict(const Error& e) {
  py::dict d;
  d["code"] = std::string(code_name(e.exit_code()));
  d["kind"] = std::string(kind_name(e.kind()));
  d["path"] = e.path();
  d["message"] = e.detail();
  return d;
}

std::string evaluate(const std::string& catalog_text, const std::string& session_text,
                     bool parallel) {
  const Catalog catalog = load_catalog_text(catalog_text);
  const SessionDocument session =
      session_text.empty() ? SessionDocument{} : parse_session_text(session_text);
  EvaluationOptions options;
  options.parallel = parallel;
  return result_to_json(run_session(catalog, session, options)).dump();
}

}  // namespace

PYBIND11_MODULE(_cloudpick, m) {
  m.doc() = "Native core of the cloudpick package";

  static py::exception<Error> error_type(m, "NativeError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object cls = py::reinterpret_borrow<py::object>(error_type.ptr());
      py::object err = cls(e.what());
      err.attr("info") = error_dict(e);
      PyErr_SetObject(error_type.ptr(), err.ptr());
    }
  });

  m.def("validate_catalog", [](const std::string& text) {
    py::list out;
    for (const auto& e : validate_catalog_text(text)) out.append(error_dict(e));
    return out;
  }, py::arg("text"));

  m.def("normalize_catalog", [](const std::string& text) {
    return save_catalog_text(load_catalog_text(text));
  }, py::arg("text"));

  m.def("generate_catalog",
        [](std::size_t images, std::size_t services, std::uint64_t seed, double density) {
          SyntheticOptions options;
          options.dependency_density = density;
          return save_catalog_text(generate_synthetic_catalog(images, services, seed, options));
        },
        py::arg("images"), py::arg("services"), py::arg("seed") = 42, py::arg("density") = 1.0);

  m.def("evaluate", &evaluate, py::arg("catalog"), py::arg("session") = std::string(),
        py::arg("parallel") = false, py::call_guard<py::gil_scoped_release>());

  m.def("priority_vector", [](const std::vector<std::vector<double>>& rows) {
    const ahp::Priority p = ahp::priority_vector(ahp::PairwiseMatrix::from_rows(rows));
    return py::make_tuple(p.weights, p.lambda_max, p.consistency_ratio);
  }, py::arg("rows"));

  m.def("fit_quadratic", [](const std::vector<std::pair<double, double>>& points) {
    const QuadraticFit f = fit_quadratic(points);
    return py::make_tuple(f.a2, f.a1, f.a0, f.r_squared);
  }, py::arg("points"));

  m.def("run_bench", [](const std::string& config_text) {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(config_text);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::kParse, "", e.what());
    }
    const BenchConfig cfg = parse_bench_config(doc);
    BenchReport report;
    {
      py::gil_scoped_release release;
      report = run_bench(cfg);
    }
    return bench_summary(report).dump();
  }, py::arg("config"));
}
