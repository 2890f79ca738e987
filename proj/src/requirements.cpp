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

#include "cloudpick/requirements.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace cloudpick {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

bool is_numerical_predicate(const Predicate& p) {
  return std::holds_alternative<Max>(p) || std::holds_alternative<Min>(p);
}

bool any_matches(const NonNumericalValue& value, const std::vector<std::string>& accepted) {
  const auto match_one = [&](const std::string& candidate) {
    const std::string norm = normalize_text(candidate);
    return std::any_of(accepted.begin(), accepted.end(), [&](const std::string& a) {
      return normalize_text(a) == norm;
    });
  };
  return std::visit(
      overloaded{
          [&](const std::string& s) { return match_one(s); },
          [&](const std::vector<std::string>& set) {
            return std::any_of(set.begin(), set.end(), match_one);
          },
      },
      value);
}

}  // namespace

std::string normalize_text(std::string_view text) {
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  auto begin = std::find_if_not(text.begin(), text.end(), is_space);
  auto end = std::find_if_not(text.rbegin(), std::make_reverse_iterator(begin), is_space).base();
  std::string out(begin, end);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string describe(const Requirement& req) {
  std::ostringstream out;
  out << to_string(req.target_kind) << '.' << req.attribute_key << ' ';
  std::visit(overloaded{
                 [&](const Max& p) { out << "< " << p.bound; },
                 [&](const Min& p) { out << "> " << p.bound; },
                 [&](const Equals& p) { out << "== \"" << p.value << '"'; },
                 [&](const OneOf& p) {
                   out << "in {";
                   for (std::size_t i = 0; i < p.values.size(); ++i) {
                     out << (i ? ", " : "") << '"' << p.values[i] << '"';
                   }
                   out << '}';
                 },
             },
             req.predicate);
  return out.str();
}

void validate_requirement(const Requirement& req, const AttributeSchema& schema) {
  const auto* num = schema.find_numerical(req.target_kind, req.attribute_key);
  const auto* text = schema.find_non_numerical(req.target_kind, req.attribute_key);
  if (num == nullptr && text == nullptr) {
    throw Error(ErrorKind::kSchema, "",
                "unknown " + std::string(to_string(req.target_kind)) + " attribute '" +
                    req.attribute_key + "'");
  }
  if (is_numerical_predicate(req.predicate) && num == nullptr) {
    throw Error(ErrorKind::kSchema, "",
                "Max/Min requirements need a numerical attribute; '" +
                    req.attribute_key + "' is non-numerical");
  }
  if (!is_numerical_predicate(req.predicate) && text == nullptr) {
    throw Error(ErrorKind::kSchema, "",
                "Equals/OneOf requirements need a non-numerical attribute; '" +
                    req.attribute_key + "' is numerical");
  }
  if (const auto* one_of = std::get_if<OneOf>(&req.predicate);
      one_of != nullptr && one_of->values.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "",
                "OneOf requirement on '" + req.attribute_key + "' has an empty value set");
  }
}

bool satisfies(const CatalogEntity& entity, const Requirement& req) {
  return std::visit(
      overloaded{
          [&](const Max& p) {
            auto it = entity.numerical.find(req.attribute_key);
            return it != entity.numerical.end() && it->second < p.bound;
          },
          [&](const Min& p) {
            auto it = entity.numerical.find(req.attribute_key);
            return it != entity.numerical.end() && it->second > p.bound;
          },
          [&](const Equals& p) {
            auto it = entity.non_numerical.find(req.attribute_key);
            return it != entity.non_numerical.end() && any_matches(it->second, {p.value});
          },
          [&](const OneOf& p) {
            auto it = entity.non_numerical.find(req.attribute_key);
            return it != entity.non_numerical.end() && any_matches(it->second, p.values);
          },
      },
      req.predicate);
}

namespace {

void validate_for(EntityKind kind, std::span<const Requirement> reqs,
                  const AttributeSchema& schema) {
  for (std::size_t i = 0; i < reqs.size(); ++i) {
    if (reqs[i].target_kind != kind) {
      throw Error(ErrorKind::kKindMismatch, "/requirements/" + std::to_string(i),
                  "requirement '" + describe(reqs[i]) + "' cannot be applied to a " +
                      std::string(to_string(kind)));
    }
    try {
      validate_requirement(reqs[i], schema);
    } catch (const Error& e) {
      throw Error(e.kind(), "/requirements/" + std::to_string(i), e.detail());
    }
  }
}

RequirementReport check_unvalidated(const CatalogEntity& entity,
                                    std::span<const Requirement> reqs) {
  RequirementReport report;
  report.entity_id = entity.id;
  for (std::size_t i = 0; i < reqs.size(); ++i) {
    if (!satisfies(entity, reqs[i])) report.failed.push_back(i);
  }
  return report;
}

}  // namespace

RequirementReport check(const CatalogEntity& entity, std::span<const Requirement> reqs,
                        const AttributeSchema& schema) {
  validate_for(entity.kind, reqs, schema);
  return check_unvalidated(entity, reqs);
}

std::vector<RequirementReport> check_all(std::span<const CatalogEntity> entities,
                                         std::span<const Requirement> reqs,
                                         const AttributeSchema& schema) {
  std::vector<RequirementReport> out;
  out.reserve(entities.size());
  if (entities.empty()) return out;
  validate_for(entities.front().kind, reqs, schema);
  for (const auto& e : entities) {
    if (e.kind != entities.front().kind) {
      throw Error(ErrorKind::kKindMismatch, "",
                  "mixed entity kinds in one requirement check ('" + e.id + "')");
    }
    out.push_back(check_unvalidated(e, reqs));
  }
  return out;
}

std::vector<RequirementReport> filter_with_relaxation(
    std::span<const CatalogEntity> entities, std::span<const Requirement> reqs,
    const AttributeSchema& schema, std::size_t relaxation_level) {
  if (relaxation_level > reqs.size()) {
    throw Error(ErrorKind::kInvalidArgument, "",
                "relaxation level " + std::to_string(relaxation_level) +
                    " exceeds the number of requirements (" +
                    std::to_string(reqs.size()) + ")");
  }
  std::vector<RequirementReport> all = check_all(entities, reqs, schema);
  std::erase_if(all, [&](const RequirementReport& r) {
    return r.failure_count() > relaxation_level;
  });
  return all;
}

std::size_t minimal_relaxation(std::span<const RequirementReport> reports) {
  if (reports.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "", "minimal relaxation of an empty set");
  }
  std::size_t best = reports.front().failure_count();
  for (const auto& r : reports) best = std::min(best, r.failure_count());
  return best;
}

std::size_t minimal_relaxation(std::span<const CatalogEntity> entities,
                               std::span<const Requirement> reqs,
                               const AttributeSchema& schema) {
  if (entities.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "", "minimal relaxation of an empty set");
  }
  const std::vector<RequirementReport> reports = check_all(entities, reqs, schema);
  return minimal_relaxation(reports);
}

}  // namespace cloudpick
