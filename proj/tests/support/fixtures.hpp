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

#ifndef CLOUDPICK_TESTS_FIXTURES_HPP_
#define CLOUDPICK_TESTS_FIXTURES_HPP_

#include <string>

#include "cloudpick/catalog.hpp"
#include "json.hpp"

namespace fixtures {

inline std::string data_path(const std::string& file) {
  return std::string(CLOUDPICK_DATA_DIR) + "/" + file;
}

inline nlohmann::json image_json(const std::string& id, double price, double popularity,
                                 const std::string& os = "Linux",
                                 nlohmann::json languages = {"PHP"}) {
  return {{"id", id},
          {"provider", "p1"},
          {"numerical", {{"hourly_license_price", price}, {"popularity", popularity}}},
          {"non_numerical",
           {{"virtualization_format", "Xen"},
            {"operating_system", os},
            {"os_version", "Ubuntu 10.4"},
            {"implementation_language", "PHP"},
            {"supported_impl_languages", languages}}}};
}

inline nlohmann::json service_json(const std::string& id, double price, double uptime = 99.9) {
  return {{"id", id},
          {"provider", "p1"},
          {"numerical",
           {{"hourly_price", price},
            {"cpu_performance", 2e9},
            {"ram_performance", 1e9},
            {"disk_performance", 1e8},
            {"max_latency", 150},
            {"avg_latency", 60},
            {"uptime", uptime},
            {"service_popularity", 50}}},
          {"non_numerical", {{"provider", "Amazon"}, {"location_country", "USA"}}}};
}

// One provider, one image, one service, one dependency.
inline nlohmann::json minimal_catalog() {
  return {{"providers", {{{"id", "p1"}, {"name", "Amazon"}}}},
          {"images", {image_json("img-a", 0.1, 50)}},
          {"services", {service_json("svc-a", 0.2)}},
          {"dependencies", {{{"image", "img-a"}, {"service", "svc-a"}}}}};
}

inline cloudpick::Catalog load(const nlohmann::json& doc) {
  return cloudpick::load_catalog_text(doc.dump());
}

}  // namespace fixtures

#endif  // CLOUDPICK_TESTS_FIXTURES_HPP_
