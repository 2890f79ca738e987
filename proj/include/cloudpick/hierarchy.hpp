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

#ifndef CLOUDPICK_HIERARCHY_HPP_
#define CLOUDPICK_HIERARCHY_HPP_

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cloudpick/ahp.hpp"
#include "cloudpick/catalog.hpp"

namespace cloudpick {

// A leaf criterion: one numerical attribute of images or of services.
struct CriterionRef {
  EntityKind kind = EntityKind::kVmImage;
  std::string key;

  // "image:popularity"
  std::string qualified() const;
  friend auto operator<=>(const CriterionRef&, const CriterionRef&) = default;
};

struct GoalNode {
  std::string name;
  std::optional<CriterionRef> criterion;  // leaves only
  std::vector<GoalNode> children;
  ahp::PairwiseMatrix comparison;         // order == children.size() for goals

  bool is_leaf() const { return criterion.has_value(); }

  static GoalNode leaf(std::string name, EntityKind kind, std::string_view key);
  // Indifferent comparisons unless a matrix is given.
  static GoalNode goal(std::string name, std::vector<GoalNode> children,
                       std::optional<ahp::PairwiseMatrix> comparison = std::nullopt);

  friend bool operator==(const GoalNode&, const GoalNode&) = default;
};

struct ConsistencyWarning {
  std::string node;  // slash-separated path from the root
  double consistency_ratio = 0.0;
};

class WeightVector {
 public:
  WeightVector() = default;
  explicit WeightVector(std::vector<std::pair<CriterionRef, double>> entries);

  // Leaf order of the hierarchy the weights came from.
  const std::vector<std::pair<CriterionRef, double>>& entries() const { return entries_; }
  // 0 when the criterion is not part of the vector.
  double weight(const CriterionRef& criterion) const;
  double sum() const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<std::pair<CriterionRef, double>> entries_;
};

struct GlobalWeights {
  WeightVector weights;
  std::vector<ConsistencyWarning> warnings;  // CR above the threshold; never fatal
};

class GoalHierarchy {
 public:
  // Checks structure (matrix orders, leaves without children, goals with
  // children, unique criteria, at least one leaf). Throws Error.
  explicit GoalHierarchy(GoalNode root);

  const GoalNode& root() const { return root_; }
  // Depth-first, left to right.
  std::vector<CriterionRef> leaves() const;

  // Every leaf must name a numerical attribute of its kind in `schema`.
  void validate_against(const AttributeSchema& schema) const;

  // Removes deselected leaves, drops goals left without children and
  // restricts comparison matrices accordingly. Throws if no leaf remains.
  GoalHierarchy without(const std::set<CriterionRef>& deselected) const;

  // Product of local priorities along each root-to-leaf path.
  GlobalWeights global_weights(const ahp::PowerIterationOptions& options = {}) const;

  friend bool operator==(const GoalHierarchy&, const GoalHierarchy&) = default;

 private:
  GoalNode root_;
};

// Image goals: cheapest (hourly license price) and best quality (popularity).
GoalHierarchy default_image_hierarchy();

// Service goals: cheapest (hourly price), best latency (max and average
// latency), best quality (performance with CPU/RAM/disk sub-goals, uptime).
GoalHierarchy default_service_hierarchy();

// Single hierarchy over image-service pairs. The root compares the image and
// service sub-hierarchies with ratio w_a / w_s; both weights must be > 0.
GoalHierarchy integrated_hierarchy(const GoalHierarchy& images, const GoalHierarchy& services,
                                   double w_a, double w_s);

}  // namespace cloudpick

#endif  // CLOUDPICK_HIERARCHY_HPP_
