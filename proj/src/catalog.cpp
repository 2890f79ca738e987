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

#include "cloudpick/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace cloudpick {

std::string_view to_string(EntityKind kind) {
  return kind == EntityKind::kVmImage ? "image" : "service";
}

std::optional<EntityKind> parse_entity_kind(std::string_view text) {
  if (text == "image" || text == "vm_image") return EntityKind::kVmImage;
  if (text == "service" || text == "infra_service") return EntityKind::kInfraService;
  return std::nullopt;
}

std::string_view to_string(Influence influence) {
  return influence == Influence::kPositive ? "positive" : "negative";
}

std::string_view to_string(Variability variability) {
  return variability == Variability::kStatic ? "static" : "dynamic";
}

bool ValueRange::contains(double value) const {
  if (!std::isfinite(value)) return false;
  if (value < lower) return false;
  return !upper || value <= *upper;
}

std::string ValueRange::describe() const {
  std::ostringstream out;
  out << '[' << lower << ", ";
  if (upper) {
    out << *upper << ']';
  } else {
    out << "inf)";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// AttributeSchema

AttributeSchema AttributeSchema::builtin() {
  using K = EntityKind;
  const auto numerical = [](std::string_view key, Influence influence,
                            std::string metric, std::optional<double> upper) {
    return NumericalAttributeDef{std::string(key), influence, std::move(metric),
                                 ValueRange{0.0, upper}, Variability::kDynamic};
  };
  const auto text = [](std::string_view key, std::vector<std::string> examples,
                       bool set_valued = false) {
    return NonNumericalAttributeDef{std::string(key), std::move(examples),
                                    set_valued, false, Variability::kStatic};
  };

  AttributeSchema s;
  s.add(K::kVmImage, numerical(attr::kHourlyLicensePrice, Influence::kNegative,
                               "$/h", std::nullopt));
  s.add(K::kVmImage, numerical(attr::kPopularity, Influence::kPositive, "%", 100.0));
  s.add(K::kVmImage, text(attr::kVirtualizationFormat, {"Xen", "VMWare"}));
  s.add(K::kVmImage, text(attr::kOperatingSystem, {"Linux", "Windows"}));
  s.add(K::kVmImage, text(attr::kOsVersion, {"Ubuntu 10.4"}));
  s.add(K::kVmImage, text(attr::kImplementationLanguage, {"Java", "Perl", "Ruby"}));
  s.add(K::kVmImage,
        text(attr::kSupportedImplLanguages, {"Java", "Perl", "Ruby"}, true));

  s.add(K::kInfraService, numerical(attr::kHourlyPrice, Influence::kNegative,
                                    "$/h", std::nullopt));
  s.add(K::kInfraService, numerical(attr::kCpuPerformance, Influence::kPositive,
                                    "Flops", std::nullopt));
  s.add(K::kInfraService, numerical(attr::kRamPerformance, Influence::kPositive,
                                    "Flops", std::nullopt));
  s.add(K::kInfraService, numerical(attr::kDiskPerformance, Influence::kPositive,
                                    "Flops", std::nullopt));
  s.add(K::kInfraService,
        numerical(attr::kMaxLatency, Influence::kNegative, "ms", std::nullopt));
  s.add(K::kInfraService,
        numerical(attr::kAvgLatency, Influence::kNegative, "ms", std::nullopt));
  s.add(K::kInfraService, numerical(attr::kUptime, Influence::kPositive, "%", 100.0));
  s.add(K::kInfraService,
        numerical(attr::kServicePopularity, Influence::kPositive, "%", 100.0));
  s.add(K::kInfraService, text(attr::kProvider, {"Amazon", "Rackspace"}));
  s.add(K::kInfraService, text(attr::kLocationCountry, {"Germany", "Australia"}));
  return s;
}

AttributeSchema::PerKind& AttributeSchema::slot(EntityKind kind) {
  return kind == EntityKind::kVmImage ? images_ : services_;
}

const AttributeSchema::PerKind& AttributeSchema::slot(EntityKind kind) const {
  return kind == EntityKind::kVmImage ? images_ : services_;
}

void AttributeSchema::add(EntityKind kind, NumericalAttributeDef def) {
  if (find_numerical(kind, def.key) || find_non_numerical(kind, def.key)) {
    throw Error(ErrorKind::kSchema, "",
                "attribute '" + def.key + "' already declared for " +
                    std::string(to_string(kind)));
  }
  slot(kind).numerical.push_back(std::move(def));
}

void AttributeSchema::add(EntityKind kind, NonNumericalAttributeDef def) {
  if (find_numerical(kind, def.key) || find_non_numerical(kind, def.key)) {
    throw Error(ErrorKind::kSchema, "",
                "attribute '" + def.key + "' already declared for " +
                    std::string(to_string(kind)));
  }
  slot(kind).non_numerical.push_back(std::move(def));
}

const NumericalAttributeDef* AttributeSchema::find_numerical(
    EntityKind kind, std::string_view key) const {
  for (const auto& def : slot(kind).numerical) {
    if (def.key == key) return &def;
  }
  return nullptr;
}

const NonNumericalAttributeDef* AttributeSchema::find_non_numerical(
    EntityKind kind, std::string_view key) const {
  for (const auto& def : slot(kind).non_numerical) {
    if (def.key == key) return &def;
  }
  return nullptr;
}

const std::vector<NumericalAttributeDef>& AttributeSchema::numerical(
    EntityKind kind) const {
  return slot(kind).numerical;
}

const std::vector<NonNumericalAttributeDef>& AttributeSchema::non_numerical(
    EntityKind kind) const {
  return slot(kind).non_numerical;
}

double CatalogEntity::number(std::string_view key) const {
  auto it = numerical.find(key);
  if (it == numerical.end()) {
    throw Error(ErrorKind::kSchema, "",
                "entity '" + id + "' has no numerical attribute '" +
                    std::string(key) + "'");
  }
  return it->second;
}

// ---------------------------------------------------------------------------
// DependencySet

namespace {

struct PairViewHash {
  std::size_t operator()(const std::pair<std::string_view, std::string_view>& p) const {
    const std::size_t a = std::hash<std::string_view>{}(p.first);
    const std::size_t b = std::hash<std::string_view>{}(p.second);
    return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  }
};

}  // namespace

struct DependencySet::Data {
  std::vector<DependencyPair> pairs;
  // Views into `pairs`; the vector is never modified after construction.
  std::unordered_set<std::pair<std::string_view, std::string_view>, PairViewHash>
      index;
};

DependencySet::DependencySet() : DependencySet(std::vector<DependencyPair>{}) {}

DependencySet::DependencySet(std::vector<DependencyPair> pairs) {
  auto data = std::make_shared<Data>();
  std::sort(pairs.begin(), pairs.end());
  pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
  data->pairs = std::move(pairs);
  data->index.reserve(data->pairs.size());
  for (const auto& [image, service] : data->pairs) {
    data->index.emplace(std::string_view(image), std::string_view(service));
  }
  data_ = std::move(data);
}

bool DependencySet::contains(std::string_view image_id,
                             std::string_view service_id) const {
  return data_->index.count({image_id, service_id}) != 0;
}

std::size_t DependencySet::size() const { return data_->pairs.size(); }

const std::vector<DependencyPair>& DependencySet::pairs() const {
  return data_->pairs;
}

bool is_feasible(const DependencyPair& pair, const DependencySet& dependencies) {
  return dependencies.contains(pair.first, pair.second);
}

// ---------------------------------------------------------------------------
// Validation

namespace {

std::string section_name(EntityKind kind) {
  return kind == EntityKind::kVmImage ? "images" : "services";
}

void validate_entity(const CatalogEntity& e, EntityKind expected,
                     std::size_t index, const AttributeSchema& schema,
                     const std::set<std::string, std::less<>>& provider_ids,
                     std::vector<Error>& out) {
  const std::string base = "/" + section_name(expected) + "/" + std::to_string(index);
  const std::string who = "entity '" + e.id + "'";

  if (e.id.empty()) {
    out.emplace_back(ErrorKind::kSchema, base + "/id", "entity id must be non-empty");
  }
  if (e.kind != expected) {
    out.emplace_back(ErrorKind::kKindMismatch, base,
                     who + " is listed under " + section_name(expected) +
                         " but has kind " + std::string(to_string(e.kind)));
  }
  if (!provider_ids.contains(e.provider_id)) {
    out.emplace_back(ErrorKind::kDanglingReference, base + "/provider",
                     who + " references unknown provider '" + e.provider_id + "'");
  }

  for (const auto& [key, value] : e.numerical) {
    const std::string path = base + "/numerical/" + key;
    const NumericalAttributeDef* def = schema.find_numerical(expected, key);
    if (def == nullptr) {
      out.emplace_back(ErrorKind::kSchema, path,
                       who + " has undeclared numerical attribute '" + key + "'");
      continue;
    }
    if (!def->range.contains(value)) {
      std::ostringstream msg;
      msg << who << " value " << value << " for '" << key << "' outside "
          << def->range.describe();
      out.emplace_back(ErrorKind::kRange, path, msg.str());
    }
  }
  for (const auto& def : schema.numerical(expected)) {
    if (!e.numerical.contains(def.key)) {
      out.emplace_back(ErrorKind::kSchema, base + "/numerical/" + def.key,
                       who + " is missing numerical attribute '" + def.key + "'");
    }
  }

  for (const auto& [key, value] : e.non_numerical) {
    const std::string path = base + "/non_numerical/" + key;
    const NonNumericalAttributeDef* def = schema.find_non_numerical(expected, key);
    if (def == nullptr) {
      out.emplace_back(ErrorKind::kSchema, path,
                       who + " has undeclared non-numerical attribute '" + key + "'");
      continue;
    }
    const bool is_set = std::holds_alternative<std::vector<std::string>>(value);
    if (is_set != def->set_valued) {
      out.emplace_back(ErrorKind::kSchema, path,
                       who + " attribute '" + key + "' must be a " +
                           (def->set_valued ? "list of strings" : "string"));
    }
  }
  for (const auto& def : schema.non_numerical(expected)) {
    if (!def.optional && !e.non_numerical.contains(def.key)) {
      out.emplace_back(ErrorKind::kSchema, base + "/non_numerical/" + def.key,
                       who + " is missing non-numerical attribute '" + def.key + "'");
    }
  }
}

}  // namespace

std::vector<Error> validate(const CatalogParts& parts) {
  std::vector<Error> out;

  std::set<std::string, std::less<>> provider_ids;
  for (std::size_t i = 0; i < parts.providers.size(); ++i) {
    const Provider& p = parts.providers[i];
    const std::string path = "/providers/" + std::to_string(i);
    if (p.id.empty()) {
      out.emplace_back(ErrorKind::kSchema, path + "/id", "provider id must be non-empty");
    } else if (!provider_ids.insert(p.id).second) {
      out.emplace_back(ErrorKind::kDuplicateId, path + "/id",
                       "provider id '" + p.id + "' is not unique");
    }
  }

  for (EntityKind kind : {EntityKind::kVmImage, EntityKind::kInfraService}) {
    for (const auto& def : parts.schema.numerical(kind)) {
      if (def.range.lower < 0.0 || (def.range.upper && *def.range.upper < def.range.lower)) {
        out.emplace_back(ErrorKind::kSchema,
                         "/attribute_defs/" + std::string(to_string(kind)) + "/numerical/" + def.key,
                         "value range " + def.range.describe() +
                             " must be a non-negative interval");
      }
    }
  }

  for (std::size_t i = 0; i < parts.images.size(); ++i) {
    validate_entity(parts.images[i], EntityKind::kVmImage, i, parts.schema,
                    provider_ids, out);
  }
  for (std::size_t i = 0; i < parts.services.size(); ++i) {
    validate_entity(parts.services[i], EntityKind::kInfraService, i, parts.schema,
                    provider_ids, out);
  }

  // Entity ids are unique across both kinds.
  std::unordered_map<std::string_view, EntityKind> kinds;
  for (EntityKind kind : {EntityKind::kVmImage, EntityKind::kInfraService}) {
    const auto& list = kind == EntityKind::kVmImage ? parts.images : parts.services;
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (list[i].id.empty()) continue;
      if (!kinds.emplace(list[i].id, kind).second) {
        out.emplace_back(ErrorKind::kDuplicateId,
                         "/" + section_name(kind) + "/" + std::to_string(i) + "/id",
                         "entity id '" + list[i].id + "' is not unique");
      }
    }
  }

  for (std::size_t i = 0; i < parts.dependencies.size(); ++i) {
    const auto& [image, service] = parts.dependencies[i];
    const std::string path = "/dependencies/" + std::to_string(i);
    auto a = kinds.find(image);
    if (a == kinds.end() || a->second != EntityKind::kVmImage) {
      out.emplace_back(ErrorKind::kDanglingReference, path + "/image",
                       "dependency references unknown image '" + image + "'");
    }
    auto s = kinds.find(service);
    if (s == kinds.end() || s->second != EntityKind::kInfraService) {
      out.emplace_back(ErrorKind::kDanglingReference, path + "/service",
                       "dependency references unknown service '" + service + "'");
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Catalog

struct Catalog::Data {
  std::vector<Provider> providers;
  AttributeSchema schema;
  std::vector<CatalogEntity> images;
  std::vector<CatalogEntity> services;
  DependencySet dependencies;
  std::unordered_map<std::string_view, const CatalogEntity*> by_id;
};

Catalog::Catalog(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

Catalog Catalog::create(CatalogParts parts) {
  std::vector<Error> violations = validate(parts);
  if (!violations.empty()) throw violations.front();

  auto data = std::make_shared<Data>();
  data->providers = std::move(parts.providers);
  data->schema = std::move(parts.schema);
  data->images = std::move(parts.images);
  data->services = std::move(parts.services);
  data->dependencies = DependencySet(std::move(parts.dependencies));
  for (const auto* list : {&data->images, &data->services}) {
    for (const auto& e : *list) data->by_id.emplace(e.id, &e);
  }
  return Catalog(std::move(data));
}

const std::vector<Provider>& Catalog::providers() const { return data_->providers; }
const AttributeSchema& Catalog::schema() const { return data_->schema; }
const std::vector<CatalogEntity>& Catalog::images() const { return data_->images; }
const std::vector<CatalogEntity>& Catalog::services() const { return data_->services; }
const DependencySet& Catalog::dependencies() const { return data_->dependencies; }

const std::vector<CatalogEntity>& Catalog::entities(EntityKind kind) const {
  return kind == EntityKind::kVmImage ? data_->images : data_->services;
}

const CatalogEntity* Catalog::find(std::string_view id) const {
  auto it = data_->by_id.find(id);
  return it == data_->by_id.end() ? nullptr : it->second;
}

const CatalogEntity* Catalog::find(EntityKind kind, std::string_view id) const {
  const CatalogEntity* e = find(id);
  return e != nullptr && e->kind == kind ? e : nullptr;
}

const Provider* Catalog::find_provider(std::string_view id) const {
  for (const auto& p : data_->providers) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

bool Catalog::is_feasible(std::string_view image_id,
                          std::string_view service_id) const {
  if (find(EntityKind::kVmImage, image_id) == nullptr) {
    throw Error(ErrorKind::kDanglingReference, "",
                "unknown image '" + std::string(image_id) + "'");
  }
  if (find(EntityKind::kInfraService, service_id) == nullptr) {
    throw Error(ErrorKind::kDanglingReference, "",
                "unknown service '" + std::string(service_id) + "'");
  }
  return data_->dependencies.contains(image_id, service_id);
}

bool operator==(const Catalog& a, const Catalog& b) {
  if (a.data_ == b.data_) return true;
  return a.providers() == b.providers() && a.schema() == b.schema() &&
         a.images() == b.images() && a.services() == b.services() &&
         a.dependencies() == b.dependencies();
}

}  // namespace cloudpick
