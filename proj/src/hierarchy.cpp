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

#include "cloudpick/hierarchy.hpp"

#include <array>
#include <numeric>

namespace cloudpick {

std::string CriterionRef::qualified() const {
  return std::string(to_string(kind)) + ":" + key;
}

GoalNode GoalNode::leaf(std::string name, EntityKind kind, std::string_view key) {
  GoalNode node;
  node.name = std::move(name);
  node.criterion = CriterionRef{kind, std::string(key)};
  return node;
}

GoalNode GoalNode::goal(std::string name, std::vector<GoalNode> children,
                        std::optional<ahp::PairwiseMatrix> comparison) {
  GoalNode node;
  node.name = std::move(name);
  const std::size_t n = children.size();
  node.children = std::move(children);
  if (comparison) {
    node.comparison = std::move(*comparison);
  } else if (n >= 1 && n <= ahp::kMaxOrder) {
    node.comparison = ahp::PairwiseMatrix::indifferent(n);
  }
  return node;
}

WeightVector::WeightVector(std::vector<std::pair<CriterionRef, double>> entries)
    : entries_(std::move(entries)) {}

double WeightVector::weight(const CriterionRef& criterion) const {
  for (const auto& [c, w] : entries_) {
    if (c == criterion) return w;
  }
  return 0.0;
}

double WeightVector::sum() const {
  double total = 0.0;
  for (const auto& entry : entries_) total += entry.second;
  return total;
}

namespace {

void check_node(const GoalNode& node, const std::string& path,
                std::set<CriterionRef>& seen) {
  if (node.is_leaf()) {
    if (!node.children.empty()) {
      throw Error(ErrorKind::kInvalidArgument, path, "a criterion leaf cannot have children");
    }
    if (!seen.insert(*node.criterion).second) {
      throw Error(ErrorKind::kInvalidArgument, path,
                  "criterion '" + node.criterion->qualified() + "' appears twice");
    }
    return;
  }
  if (node.children.empty()) {
    throw Error(ErrorKind::kInvalidArgument, path, "goal '" + node.name + "' has no children");
  }
  if (node.comparison.order() != node.children.size()) {
    throw Error(ErrorKind::kInvalidArgument, path,
                "goal '" + node.name + "' compares " +
                    std::to_string(node.comparison.order()) + " items but has " +
                    std::to_string(node.children.size()) + " children");
  }
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    check_node(node.children[i], path + "/children/" + std::to_string(i), seen);
  }
}

void collect_leaves(const GoalNode& node, std::vector<CriterionRef>& out) {
  if (node.is_leaf()) {
    out.push_back(*node.criterion);
    return;
  }
  for (const auto& child : node.children) collect_leaves(child, out);
}

// Returns nullopt when nothing below `node` survives.
std::optional<GoalNode> prune(const GoalNode& node, const std::set<CriterionRef>& drop) {
  if (node.is_leaf()) {
    if (drop.contains(*node.criterion)) return std::nullopt;
    return node;
  }
  GoalNode out;
  out.name = node.name;
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    if (auto child = prune(node.children[i], drop)) {
      out.children.push_back(std::move(*child));
      keep.push_back(i);
    }
  }
  if (keep.empty()) return std::nullopt;
  out.comparison = node.comparison.submatrix(keep);
  return out;
}

void propagate(const GoalNode& node, double weight, const std::string& path,
               const ahp::PowerIterationOptions& options, GlobalWeights& out,
               std::vector<std::pair<CriterionRef, double>>& entries) {
  if (node.is_leaf()) {
    entries.emplace_back(*node.criterion, weight);
    return;
  }
  ahp::Priority local = ahp::priority_vector(node.comparison, options);
  if (local.consistency_ratio > ahp::kConsistencyThreshold) {
    out.warnings.push_back({path, local.consistency_ratio});
  }
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    const GoalNode& child = node.children[i];
    propagate(child, weight * local.weights[i], path + "/" + child.name, options, out, entries);
  }
}

}  // namespace

GoalHierarchy::GoalHierarchy(GoalNode root) : root_(std::move(root)) {
  std::set<CriterionRef> seen;
  check_node(root_, "", seen);
}

std::vector<CriterionRef> GoalHierarchy::leaves() const {
  std::vector<CriterionRef> out;
  collect_leaves(root_, out);
  return out;
}

void GoalHierarchy::validate_against(const AttributeSchema& schema) const {
  for (const auto& c : leaves()) {
    if (schema.find_numerical(c.kind, c.key) == nullptr) {
      throw Error(ErrorKind::kSchema, "",
                  "hierarchy criterion '" + c.qualified() +
                      "' is not a numerical attribute of that entity kind");
    }
  }
}

GoalHierarchy GoalHierarchy::without(const std::set<CriterionRef>& deselected) const {
  auto pruned = prune(root_, deselected);
  if (!pruned) {
    throw Error(ErrorKind::kInvalidArgument, "",
                "deselection removes every criterion of hierarchy '" + root_.name + "'");
  }
  return GoalHierarchy(std::move(*pruned));
}

GlobalWeights GoalHierarchy::global_weights(const ahp::PowerIterationOptions& options) const {
  GlobalWeights out;
  std::vector<std::pair<CriterionRef, double>> entries;
  propagate(root_, 1.0, root_.name, options, out, entries);
  out.weights = WeightVector(std::move(entries));
  return out;
}

GoalHierarchy default_image_hierarchy() {
  constexpr auto kImage = EntityKind::kVmImage;
  return GoalHierarchy(GoalNode::goal(
      "VM image",
      {
          GoalNode::goal("Cheapest",
                         {GoalNode::leaf("Hourly license price", kImage,
                                         attr::kHourlyLicensePrice)}),
          GoalNode::goal("Best quality",
                         {GoalNode::leaf("Popularity", kImage, attr::kPopularity)}),
      }));
}

GoalHierarchy default_service_hierarchy() {
  constexpr auto kService = EntityKind::kInfraService;
  return GoalHierarchy(GoalNode::goal(
      "Infrastructure service",
      {
          GoalNode::goal("Cheapest",
                         {GoalNode::leaf("Hourly price", kService, attr::kHourlyPrice)}),
          GoalNode::goal("Best latency",
                         {
                             GoalNode::leaf("Max. latency", kService, attr::kMaxLatency),
                             GoalNode::leaf("Avg. latency", kService, attr::kAvgLatency),
                         }),
          GoalNode::goal(
              "Best quality",
              {
                  GoalNode::goal(
                      "Performance",
                      {
                          GoalNode::leaf("CPU performance", kService, attr::kCpuPerformance),
                          GoalNode::leaf("RAM performance", kService, attr::kRamPerformance),
                          GoalNode::leaf("Disk performance", kService,
                                         attr::kDiskPerformance),
                      }),
                  GoalNode::leaf("Uptime", kService, attr::kUptime),
              }),
      }));
}

GoalHierarchy integrated_hierarchy(const GoalHierarchy& images, const GoalHierarchy& services,
                                   double w_a, double w_s) {
  if (!(w_a > 0.0) || !(w_s > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "",
                "the integrated hierarchy needs w_a > 0 and w_s > 0");
  }
  const std::array<double, 2> weights = {w_a, w_s};
  return GoalHierarchy(GoalNode::goal("Combination", {images.root(), services.root()},
                                      ahp::PairwiseMatrix::from_weights(weights)));
}

}  // namespace cloudpick
