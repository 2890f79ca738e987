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

// Satisficing requirements (Max / Min / Equals / OneOf) and the relaxation
// scheme that keeps alternatives failing at most k requirements.

#ifndef CLOUDPICK_REQUIREMENTS_HPP_
#define CLOUDPICK_REQUIREMENTS_HPP_

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cloudpick/catalog.hpp"

namespace cloudpick {

// Passes iff value < bound.
struct Max {
  double bound = 0.0;
  friend bool operator==(const Max&, const Max&) = default;
};
// Passes iff value > bound.
struct Min {
  double bound = 0.0;
  friend bool operator==(const Min&, const Min&) = default;
};
struct Equals {
  std::string value;
  friend bool operator==(const Equals&, const Equals&) = default;
};
struct OneOf {
  std::vector<std::string> values;
  friend bool operator==(const OneOf&, const OneOf&) = default;
};

using Predicate = std::variant<Max, Min, Equals, OneOf>;

struct Requirement {
  EntityKind target_kind = EntityKind::kVmImage;
  std::string attribute_key;
  Predicate predicate;

  friend bool operator==(const Requirement&, const Requirement&) = default;
};

// Human-readable form, e.g. "image.popularity > 80".
std::string describe(const Requirement& req);

// Throws Error(kSchema) for an unknown key or a predicate/value-type mismatch
// (Max/Min need a numerical key, Equals/OneOf a non-numerical one) and
// Error(kInvalidArgument) for an empty OneOf set.
void validate_requirement(const Requirement& req, const AttributeSchema& schema);

// Trimmed, ASCII-lowercased form used for every string comparison.
std::string normalize_text(std::string_view text);

struct RequirementReport {
  std::string entity_id;
  // Indices into the requirement list, ascending.
  std::vector<std::size_t> failed;

  std::size_t failure_count() const { return failed.size(); }
  friend bool operator==(const RequirementReport&, const RequirementReport&) = default;
};

// Evaluates one predicate. Set-valued attributes pass Equals/OneOf when the
// intersection with the accepted values is non-empty. A missing optional
// attribute fails. Requirement must already be valid for the schema.
bool satisfies(const CatalogEntity& entity, const Requirement& req);

// Throws Error(kKindMismatch) when a requirement targets another entity kind
// and the validate_requirement errors for malformed requirements.
RequirementReport check(const CatalogEntity& entity, std::span<const Requirement> reqs,
                        const AttributeSchema& schema);

// One report per entity, in input order.
std::vector<RequirementReport> check_all(std::span<const CatalogEntity> entities,
                                         std::span<const Requirement> reqs,
                                         const AttributeSchema& schema);

// Reports of entities failing at most `relaxation_level` requirements, in
// input order. Requires relaxation_level <= reqs.size().
std::vector<RequirementReport> filter_with_relaxation(
    std::span<const CatalogEntity> entities, std::span<const Requirement> reqs,
    const AttributeSchema& schema, std::size_t relaxation_level);

// Least k such that some entity fails at most k requirements.
std::size_t minimal_relaxation(std::span<const CatalogEntity> entities,
                               std::span<const Requirement> reqs,
                               const AttributeSchema& schema);
std::size_t minimal_relaxation(std::span<const RequirementReport> reports);

}  // namespace cloudpick

#endif  // CLOUDPICK_REQUIREMENTS_HPP_
