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

// Catalog of VM images, infrastructure services, providers and the explicit
// image/service compatibility set. A Catalog is immutable once built and can
// be shared freely between threads; copies share the underlying storage.

#ifndef CLOUDPICK_CATALOG_HPP_
#define CLOUDPICK_CATALOG_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "cloudpick/error.hpp"

namespace cloudpick {

enum class EntityKind { kVmImage, kInfraService };

// "image" / "service".
std::string_view to_string(EntityKind kind);
// Accepts "image", "vm_image", "service", "infra_service".
std::optional<EntityKind> parse_entity_kind(std::string_view text);

enum class Influence { kPositive, kNegative };
enum class Variability { kStatic, kDynamic };

std::string_view to_string(Influence influence);
std::string_view to_string(Variability variability);

// [lower, upper] or [lower, +inf) when upper is empty.
struct ValueRange {
  double lower = 0.0;
  std::optional<double> upper;

  bool contains(double value) const;
  std::string describe() const;
  friend bool operator==(const ValueRange&, const ValueRange&) = default;
};

struct NumericalAttributeDef {
  std::string key;
  Influence influence = Influence::kPositive;
  std::string metric;
  ValueRange range;
  Variability variability = Variability::kDynamic;

  friend bool operator==(const NumericalAttributeDef&,
                         const NumericalAttributeDef&) = default;
};

struct NonNumericalAttributeDef {
  std::string key;
  std::vector<std::string> allowed_examples;
  // Holds a set of strings rather than a single string.
  bool set_valued = false;
  // Entities may omit the attribute. Predicates on a missing value fail.
  bool optional = false;
  Variability variability = Variability::kStatic;

  friend bool operator==(const NonNumericalAttributeDef&,
                         const NonNumericalAttributeDef&) = default;
};

// Built-in attribute keys.
namespace attr {
// VM image, numerical.
inline constexpr std::string_view kHourlyLicensePrice = "hourly_license_price";
inline constexpr std::string_view kPopularity = "popularity";
// VM image, non-numerical.
inline constexpr std::string_view kVirtualizationFormat = "virtualization_format";
inline constexpr std::string_view kOperatingSystem = "operating_system";
inline constexpr std::string_view kOsVersion = "os_version";
inline constexpr std::string_view kImplementationLanguage = "implementation_language";
inline constexpr std::string_view kSupportedImplLanguages = "supported_impl_languages";
// Infrastructure service, numerical.
inline constexpr std::string_view kHourlyPrice = "hourly_price";
inline constexpr std::string_view kCpuPerformance = "cpu_performance";
inline constexpr std::string_view kRamPerformance = "ram_performance";
inline constexpr std::string_view kDiskPerformance = "disk_performance";
inline constexpr std::string_view kMaxLatency = "max_latency";
inline constexpr std::string_view kAvgLatency = "avg_latency";
inline constexpr std::string_view kUptime = "uptime";
inline constexpr std::string_view kServicePopularity = "service_popularity";
// Infrastructure service, non-numerical.
inline constexpr std::string_view kProvider = "provider";
inline constexpr std::string_view kLocationCountry = "location_country";
}  // namespace attr

// Attribute definitions per entity kind. Keys are unique within a kind
// across both numerical and non-numerical definitions.
class AttributeSchema {
 public:
  // Image and service attributes with their influence, metric and range.
  static AttributeSchema builtin();

  // Throws Error(kSchema) on a duplicate key.
  void add(EntityKind kind, NumericalAttributeDef def);
  void add(EntityKind kind, NonNumericalAttributeDef def);

  const NumericalAttributeDef* find_numerical(EntityKind kind,
                                              std::string_view key) const;
  const NonNumericalAttributeDef* find_non_numerical(EntityKind kind,
                                                     std::string_view key) const;

  const std::vector<NumericalAttributeDef>& numerical(EntityKind kind) const;
  const std::vector<NonNumericalAttributeDef>& non_numerical(EntityKind kind) const;

  friend bool operator==(const AttributeSchema&, const AttributeSchema&) = default;

 private:
  struct PerKind {
    std::vector<NumericalAttributeDef> numerical;
    std::vector<NonNumericalAttributeDef> non_numerical;
    friend bool operator==(const PerKind&, const PerKind&) = default;
  };
  PerKind& slot(EntityKind kind);
  const PerKind& slot(EntityKind kind) const;

  PerKind images_;
  PerKind services_;
};

struct Provider {
  std::string id;
  std::string name;
  friend bool operator==(const Provider&, const Provider&) = default;
};

// A single string, or a set of strings for set-valued attributes.
using NonNumericalValue = std::variant<std::string, std::vector<std::string>>;

struct CatalogEntity {
  std::string id;
  EntityKind kind = EntityKind::kVmImage;
  std::string provider_id;
  std::map<std::string, double, std::less<>> numerical;
  std::map<std::string, NonNumericalValue, std::less<>> non_numerical;

  // Throws Error(kSchema) if the key is missing.
  double number(std::string_view key) const;

  friend bool operator==(const CatalogEntity&, const CatalogEntity&) = default;
};

using DependencyPair = std::pair<std::string, std::string>;  // (image, service)

// Explicit (image, service) compatibility pairs. Membership is exact and
// ordered: (image, service) only.
class DependencySet {
 public:
  DependencySet();
  explicit DependencySet(std::vector<DependencyPair> pairs);

  bool contains(std::string_view image_id, std::string_view service_id) const;
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  // Sorted by (image, service).
  const std::vector<DependencyPair>& pairs() const;

  friend bool operator==(const DependencySet& a, const DependencySet& b) {
    return a.pairs() == b.pairs();
  }

 private:
  struct Data;
  std::shared_ptr<const Data> data_;
};

// Everything needed to build a Catalog. Validation happens in Catalog::create.
struct CatalogParts {
  std::vector<Provider> providers;
  AttributeSchema schema = AttributeSchema::builtin();
  std::vector<CatalogEntity> images;
  std::vector<CatalogEntity> services;
  std::vector<DependencyPair> dependencies;
};

// Every invariant violation in `parts`, in document order. Paths follow the
// catalog file layout ("/images/3/numerical/popularity").
std::vector<Error> validate(const CatalogParts& parts);

class Catalog {
 public:
  // Throws the first violation reported by validate().
  static Catalog create(CatalogParts parts);

  const std::vector<Provider>& providers() const;
  const AttributeSchema& schema() const;
  const std::vector<CatalogEntity>& images() const;
  const std::vector<CatalogEntity>& services() const;
  const std::vector<CatalogEntity>& entities(EntityKind kind) const;
  const DependencySet& dependencies() const;

  const CatalogEntity* find(std::string_view id) const;
  const CatalogEntity* find(EntityKind kind, std::string_view id) const;
  const Provider* find_provider(std::string_view id) const;

  // Throws Error(kDanglingReference) when either id does not resolve to an
  // entity of the right kind.
  bool is_feasible(std::string_view image_id, std::string_view service_id) const;

  friend bool operator==(const Catalog& a, const Catalog& b);

 private:
  struct Data;
  explicit Catalog(std::shared_ptr<const Data> data);
  std::shared_ptr<const Data> data_;
};

// Free-function form of Catalog::is_feasible over a bare dependency set.
bool is_feasible(const DependencyPair& pair, const DependencySet& dependencies);

// ---------------------------------------------------------------------------
// Catalog file format (JSON): top-level `providers`, `attribute_defs`,
// `images`, `services`, `dependencies`.

Catalog load_catalog(std::istream& in);
Catalog load_catalog_text(std::string_view text);
Catalog load_catalog_file(const std::string& path);

// Parses as far as possible and reports every violation instead of stopping
// at the first one. A document that is not valid JSON yields one parse error.
std::vector<Error> validate_catalog_text(std::string_view text);

void save_catalog(const Catalog& catalog, std::ostream& out);
std::string save_catalog_text(const Catalog& catalog);

// ---------------------------------------------------------------------------
// Synthetic catalogs.

struct SyntheticOptions {
  // Probability that a given (image, service) pair is in D. 1.0 yields the
  // full cross product.
  double dependency_density = 1.0;
  int provider_count = 4;
};

// Uniform attribute values inside each built-in value range. Unbounded
// ranges are sampled from finite sub-ranges: price [0.01, 10] $/h,
// performance [1e6, 1e12] Flops, latency [1, 2000] ms.
Catalog generate_synthetic_catalog(std::size_t image_count,
                                   std::size_t service_count,
                                   std::uint64_t seed,
                                   const SyntheticOptions& options = {});

// Sampling interval used for a numerical attribute during synthesis.
ValueRange synthesis_range(const NumericalAttributeDef& def);

}  // namespace cloudpick

#endif  // CLOUDPICK_CATALOG_HPP_
