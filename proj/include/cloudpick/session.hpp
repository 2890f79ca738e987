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

// Session documents (requirements, goal hierarchies with judgments,
// combination weights, relaxation policy, mode) and the end-to-end pipeline
// that turns a catalog plus a session into a result document. The CLI and
// the HTTP server both go through run_session() and result_to_json(), so
// their payloads agree by construction.

#ifndef CLOUDPICK_SESSION_HPP_
#define CLOUDPICK_SESSION_HPP_

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cloudpick/catalog.hpp"
#include "cloudpick/evaluation.hpp"
#include "cloudpick/hierarchy.hpp"
#include "cloudpick/requirements.hpp"
#include "json.hpp"

namespace cloudpick {

enum class Mode { kTwoPhase, kIntegrated };

std::string_view to_string(Mode mode);
std::optional<Mode> parse_mode(std::string_view text);

struct RelaxationPolicy {
  // Smallest level that leaves a non-empty survivor set.
  bool automatic = true;
  std::size_t level = 0;  // used when !automatic

  static RelaxationPolicy fixed(std::size_t level) { return {false, level}; }
  // "auto" or a non-negative integer.
  static std::optional<RelaxationPolicy> parse(std::string_view text);
  friend bool operator==(const RelaxationPolicy&, const RelaxationPolicy&) = default;
};

struct SessionDocument {
  // Catalog path (CLI, relative to the session file) or catalog id (server).
  std::string catalog;
  std::vector<Requirement> requirements;
  GoalHierarchy image_hierarchy = default_image_hierarchy();
  GoalHierarchy service_hierarchy = default_service_hierarchy();
  // Built from the two hierarchies and (w_a, w_s) when absent.
  std::optional<GoalHierarchy> integrated_hierarchy;
  std::set<CriterionRef> deselected;
  CombinationWeights combination;
  RelaxationPolicy relaxation;
  Mode mode = Mode::kTwoPhase;

  std::vector<Requirement> requirements_for(EntityKind kind) const;
};

// Throws Error with a path into the session document.
SessionDocument parse_session(const nlohmann::json& doc);
SessionDocument parse_session_text(std::string_view text);
SessionDocument load_session_file(const std::string& path);

nlohmann::json session_to_json(const SessionDocument& session);

// Applies a partial document. Recognized keys: requirements (replace),
// add_requirements (append), remove_requirements (indices), hierarchies
// (images / services / integrated, each replaced), deselected, combination,
// relaxation, mode. Returns the patched copy; `session` is left untouched.
SessionDocument apply_patch(const SessionDocument& session, const nlohmann::json& patch);

// Checks every requirement, hierarchy and weight against the catalog schema.
void validate_session(const SessionDocument& session, const Catalog& catalog);

struct HierarchyWarning {
  std::string hierarchy;  // "images", "services" or "integrated"
  ConsistencyWarning warning;
};

struct ResultSet {
  Mode mode = Mode::kTwoPhase;
  RelaxationPolicy policy;
  std::size_t image_relaxation = 0;    // two-phase
  std::size_t service_relaxation = 0;  // two-phase
  std::size_t pair_relaxation = 0;     // integrated
  std::vector<std::string> requirements;
  WeightVector image_weights;
  WeightVector service_weights;
  WeightVector integrated_weights;
  CombinationWeights combination;
  std::vector<HierarchyWarning> warnings;
  // Empty in integrated mode, which ranks pairs only.
  std::vector<EvaluationResult> images;
  std::vector<EvaluationResult> services;
  std::vector<CombinedSolution> combinations;
  std::optional<CombinedSolution> best;

  bool feasible() const { return best.has_value(); }
};

// Runs validation, relaxation, scoring and combination.
ResultSet run_session(const Catalog& catalog, const SessionDocument& session,
                      const EvaluationOptions& options = {});

struct ResultJsonOptions {
  // Cap on emitted combination rows; the total is always reported.
  std::optional<std::size_t> max_combinations;
  // ISO-8601 value for the `generated_at` field; omitted when empty.
  std::string timestamp;
};

nlohmann::ordered_json result_to_json(const ResultSet& result, const ResultJsonOptions& options = {});

// Current UTC time as ISO-8601, for ResultJsonOptions::timestamp.
std::string utc_timestamp();

}  // namespace cloudpick

#endif  // CLOUDPICK_SESSION_HPP_
