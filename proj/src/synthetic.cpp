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

#include <algorithm>
#include <array>
#include <random>
#include <string>

#include "cloudpick/catalog.hpp"

namespace cloudpick {

namespace {

// std::uniform_real_distribution is implementation-defined; this mapping is
// not, so catalogs are identical across standard libraries.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  std::size_t index(std::size_t n) {
    return std::min(n - 1, static_cast<std::size_t>(unit() * static_cast<double>(n)));
  }

  template <typename Range>
  const auto& pick(const Range& r) {
    return r[index(std::size(r))];
  }

 private:
  std::mt19937_64 engine_;
};

std::string padded_id(std::string_view prefix, std::size_t i, std::size_t count) {
  std::string digits = std::to_string(i);
  const std::size_t width = std::max<std::size_t>(4, std::to_string(count).size());
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return std::string(prefix) + digits;
}

constexpr std::array<const char*, 4> kFormats = {"Xen", "VMWare", "KVM", "AMI"};
constexpr std::array<const char*, 2> kOperatingSystems = {"Linux", "Windows"};
constexpr std::array<const char*, 3> kLinuxVersions = {"Ubuntu 10.4", "Debian 6",
                                                       "CentOS 5.6"};
constexpr std::array<const char*, 2> kWindowsVersions = {"Server 2008", "Server 2003"};
constexpr std::array<const char*, 6> kLanguages = {"Java", "PHP", "Perl",
                                                   "Ruby", "Python", "C#"};
constexpr std::array<const char*, 5> kCountries = {"Germany", "Australia", "USA",
                                                   "Ireland", "Singapore"};

}  // namespace

ValueRange synthesis_range(const NumericalAttributeDef& def) {
  if (def.range.upper) return def.range;
  if (def.metric == "$/h") return {0.01, 10.0};
  if (def.metric == "Flops") return {1e6, 1e12};
  if (def.metric == "ms") return {1.0, 2000.0};
  return {def.range.lower, def.range.lower + 100.0};
}

Catalog generate_synthetic_catalog(std::size_t image_count, std::size_t service_count,
                                   std::uint64_t seed, const SyntheticOptions& options) {
  if (image_count < 1 || service_count < 1) {
    throw Error(ErrorKind::kInvalidArgument, "",
                "synthetic catalogs need at least one image and one service");
  }
  if (options.provider_count < 1) {
    throw Error(ErrorKind::kInvalidArgument, "", "provider_count must be >= 1");
  }
  if (!(options.dependency_density >= 0.0 && options.dependency_density <= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "", "dependency_density must lie in [0, 1]");
  }

  Sampler rng(seed);
  CatalogParts parts;
  for (int p = 1; p <= options.provider_count; ++p) {
    parts.providers.push_back({"p" + std::to_string(p), "Provider " + std::to_string(p)});
  }

  const auto sample_numbers = [&](CatalogEntity& e) {
    for (const auto& def : parts.schema.numerical(e.kind)) {
      const ValueRange r = synthesis_range(def);
      e.numerical.emplace(def.key, rng.uniform(r.lower, *r.upper));
    }
  };

  parts.images.reserve(image_count);
  for (std::size_t i = 0; i < image_count; ++i) {
    CatalogEntity e;
    e.id = padded_id("img-", i, image_count);
    e.kind = EntityKind::kVmImage;
    e.provider_id = rng.pick(parts.providers).id;
    sample_numbers(e);
    const std::string os = rng.pick(kOperatingSystems);
    e.non_numerical.emplace(attr::kVirtualizationFormat, rng.pick(kFormats));
    e.non_numerical.emplace(attr::kOperatingSystem, os);
    e.non_numerical.emplace(attr::kOsVersion, os == "Linux" ? rng.pick(kLinuxVersions)
                                                            : rng.pick(kWindowsVersions));
    e.non_numerical.emplace(attr::kImplementationLanguage, rng.pick(kLanguages));
    std::vector<std::string> supported;
    for (const char* lang : kLanguages) {
      if (rng.unit() < 0.4) supported.emplace_back(lang);
    }
    if (supported.empty()) supported.emplace_back(rng.pick(kLanguages));
    e.non_numerical.emplace(attr::kSupportedImplLanguages, std::move(supported));
    parts.images.push_back(std::move(e));
  }

  parts.services.reserve(service_count);
  for (std::size_t j = 0; j < service_count; ++j) {
    CatalogEntity e;
    e.id = padded_id("svc-", j, service_count);
    e.kind = EntityKind::kInfraService;
    const Provider& provider = rng.pick(parts.providers);
    e.provider_id = provider.id;
    sample_numbers(e);
    e.non_numerical.emplace(attr::kProvider, provider.name);
    e.non_numerical.emplace(attr::kLocationCountry, rng.pick(kCountries));
    parts.services.push_back(std::move(e));
  }

  const bool full = options.dependency_density >= 1.0;
  parts.dependencies.reserve(full ? image_count * service_count : 0);
  for (const auto& image : parts.images) {
    for (const auto& service : parts.services) {
      if (full || rng.unit() < options.dependency_density) {
        parts.dependencies.emplace_back(image.id, service.id);
      }
    }
  }
  return Catalog::create(std::move(parts));
}

}  // namespace cloudpick
