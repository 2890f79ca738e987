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

// Analytic Hierarchy Process primitives: reciprocal pairwise-comparison
// matrices, principal-eigenvector priorities with Saaty's consistency ratio,
// and distributive normalization of alternative values.

#ifndef CLOUDPICK_AHP_HPP_
#define CLOUDPICK_AHP_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "cloudpick/catalog.hpp"

namespace cloudpick::ahp {

inline constexpr double kSaatyMin = 1.0 / 9.0;
inline constexpr double kSaatyMax = 9.0;
inline constexpr std::size_t kMaxOrder = 10;
inline constexpr double kReciprocityTolerance = 1e-9;
inline constexpr double kConsistencyThreshold = 0.1;
inline constexpr double kNegativeEpsilon = 1e-9;

// One upper-triangle judgment: element i is `ratio` times as important as j.
struct Judgment {
  std::size_t i = 0;
  std::size_t j = 0;
  double ratio = 1.0;
  friend bool operator==(const Judgment&, const Judgment&) = default;
};

// Positive reciprocal k x k matrix, 1 <= k <= kMaxOrder.
class PairwiseMatrix {
 public:
  // Order-1 matrix [[1]].
  PairwiseMatrix();

  // Checks squareness, positivity, unit diagonal and reciprocity. Saaty-scale
  // bounds are not enforced here since derived matrices may exceed them.
  static PairwiseMatrix from_rows(const std::vector<std::vector<double>>& rows);

  // User input: upper-triangle judgments with i < j, ratios inside
  // [1/9, 9]. Pairs not listed default to 1; the lower triangle is filled by
  // reciprocity.
  static PairwiseMatrix from_judgments(std::size_t order, std::span<const Judgment> judgments);

  // All-ones matrix (every pair judged equally important).
  static PairwiseMatrix indifferent(std::size_t order);

  // Perfectly consistent matrix w_i / w_j. Weights must be positive.
  static PairwiseMatrix from_weights(std::span<const double> weights);

  std::size_t order() const { return order_; }
  double operator()(std::size_t i, std::size_t j) const { return entries_[i * order_ + j]; }

  // Principal submatrix over the given (ascending, distinct) indices.
  PairwiseMatrix submatrix(std::span<const std::size_t> keep) const;

  std::vector<Judgment> upper_triangle() const;

  friend bool operator==(const PairwiseMatrix&, const PairwiseMatrix&) = default;

 private:
  PairwiseMatrix(std::size_t order, std::vector<double> entries);

  std::size_t order_;
  std::vector<double> entries_;  // row-major
};

struct PowerIterationOptions {
  double tolerance = 1e-10;
  std::size_t max_iterations = 10'000;
};

struct Priority {
  std::vector<double> weights;  // sums to 1
  double lambda_max = 1.0;
  double consistency_ratio = 0.0;
  std::size_t iterations = 0;
};

// Saaty's random index RI(k) for 1 <= k <= 10.
double random_index(std::size_t order);

// Normalized principal eigenvector by power iteration from the uniform
// vector; stops when successive iterates differ by less than the tolerance
// (max norm). Throws Error(kNonConvergence) at the iteration cap.
Priority priority_vector(const PairwiseMatrix& matrix, const PowerIterationOptions& options = {});

// Relative values of one attribute over a population of alternatives.
// Positive influence: v_i / sum(v); an all-zero list maps to 1/k.
// Negative influence: (1/(v_i + eps)) / sum_j (1/(v_j + eps)).
std::vector<double> normalize_alternatives(std::span<const double> values, Influence influence,
                                           double epsilon = kNegativeEpsilon);

}  // namespace cloudpick::ahp

#endif  // CLOUDPICK_AHP_HPP_
