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

// Scoring of images and services, feasibility-gated combination into
// (image, service) pairs, and the single-hierarchy integrated variant.
//
// All result lists are sorted by value, descending; ties are broken by
// ascending id (pairs: image id, then service id).

#ifndef CLOUDPICK_EVALUATION_HPP_
#define CLOUDPICK_EVALUATION_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cloudpick/catalog.hpp"
#include "cloudpick/hierarchy.hpp"
#include "cloudpick/requirements.hpp"

namespace cloudpick {

struct EvaluationOptions {
  // Score alternatives / pairs on worker threads. Results are identical to
  // the sequential path.
  bool parallel = false;
  double epsilon = ahp::kNegativeEpsilon;
};

struct EvaluationResult {
  std::string entity_id;
  double value = 0.0;  // 0 for eliminated alternatives
  std::vector<std::size_t> failed;  // failing requirement indices
  bool survived = false;  // failure count within the relaxation level
  std::size_t rank = 0;   // 1-based

  std::size_t failure_count() const { return failed.size(); }
};

// Weighted sum of per-criterion relative values over the survivors. The
// normalization population is the survivor set; eliminated entities get 0.
// Throws for an empty entity list, kind mismatches and criteria that are not
// numerical attributes of `kind`.
std::vector<EvaluationResult> evaluate_entities(std::span<const CatalogEntity> entities,
                                                EntityKind kind,
                                                std::span<const Requirement> requirements,
                                                const AttributeSchema& schema,
                                                const WeightVector& weights,
                                                std::size_t relaxation_level,
                                                const EvaluationOptions& options = {});

std::vector<EvaluationResult> evaluate_images(const Catalog& catalog,
                                              std::span<const Requirement> requirements,
                                              const GoalHierarchy& hierarchy,
                                              std::size_t relaxation_level,
                                              const EvaluationOptions& options = {});

std::vector<EvaluationResult> evaluate_services(const Catalog& catalog,
                                                std::span<const Requirement> requirements,
                                                const GoalHierarchy& hierarchy,
                                                std::size_t relaxation_level,
                                                const EvaluationOptions& options = {});

enum class Combiner { kAdditive, kMultiplicative };

std::string_view to_string(Combiner combiner);
std::optional<Combiner> parse_combiner(std::string_view text);

struct CombinationWeights {
  double w_a = 0.5;
  double w_s = 0.5;
  // Multiplicative uses the plain product f * g and ignores w_a / w_s.
  Combiner combiner = Combiner::kAdditive;

  // w_a, w_s >= 0 and w_a + w_s = 1 within 1e-9. Throws Error(kRange).
  void validate() const;
  double apply(double image_value, double service_value) const;
};

struct CombinedSolution {
  std::string image_id;
  std::string service_id;
  double combined_value = 0.0;  // 0 when infeasible
  double image_value = 0.0;
  double service_value = 0.0;
  std::size_t failure_count = 0;  // image + service requirement failures
  bool feasible = false;  // (image, service) is in D
  // Feasible and both sides survived their requirement checks. Only eligible
  // pairs can be returned as the best combination.
  bool eligible = false;
  std::size_t rank = 0;  // 1-based
};

// All m * n pairs, infeasible ones with value 0.
std::vector<CombinedSolution> combine(std::span<const EvaluationResult> images,
                                      std::span<const EvaluationResult> services,
                                      const DependencySet& dependencies,
                                      const CombinationWeights& weights,
                                      const EvaluationOptions& options = {});

// Highest-ranked eligible pair of a sorted combine() / evaluate_integrated()
// list; nullopt is the "no feasible combination" outcome.
std::optional<CombinedSolution> best_combination(std::span<const CombinedSolution> ranked);

// Argmax over all pairs without materializing or sorting them.
std::optional<CombinedSolution> best_combination(std::span<const EvaluationResult> images,
                                                 std::span<const EvaluationResult> services,
                                                 const DependencySet& dependencies,
                                                 const CombinationWeights& weights);

// Each feasible pair is one alternative carrying both entities' attributes.
// Requirement failures of image and service add up; normalization runs over
// the feasible, surviving pairs. Criteria may be image or service attributes.
std::vector<CombinedSolution> evaluate_integrated(const Catalog& catalog,
                                                  std::span<const Requirement> image_requirements,
                                                  std::span<const Requirement> service_requirements,
                                                  const WeightVector& weights,
                                                  std::size_t relaxation_level,
                                                  const EvaluationOptions& options = {});

std::vector<CombinedSolution> evaluate_integrated(const Catalog& catalog,
                                                  std::span<const Requirement> image_requirements,
                                                  std::span<const Requirement> service_requirements,
                                                  const GoalHierarchy& hierarchy,
                                                  std::size_t relaxation_level,
                                                  const EvaluationOptions& options = {});

// Least total failure count over feasible pairs; 0 when D is empty.
std::size_t minimal_integrated_relaxation(const Catalog& catalog,
                                          std::span<const Requirement> image_requirements,
                                          std::span<const Requirement> service_requirements);

}  // namespace cloudpick

#endif  // CLOUDPICK_EVALUATION_HPP_
