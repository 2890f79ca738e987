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

#include "cloudpick/ahp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

namespace cloudpick::ahp {

namespace {

void check_order(std::size_t order) {
  if (order < 1 || order > kMaxOrder) {
    throw Error(ErrorKind::kInvalidArgument, "",
                "pairwise matrix order " + std::to_string(order) + " outside [1, " +
                    std::to_string(kMaxOrder) + "]");
  }
}

std::string cell(std::size_t i, std::size_t j) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ")";
}

}  // namespace

PairwiseMatrix::PairwiseMatrix() : order_(1), entries_{1.0} {}

PairwiseMatrix::PairwiseMatrix(std::size_t order, std::vector<double> entries)
    : order_(order), entries_(std::move(entries)) {}

PairwiseMatrix PairwiseMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  const std::size_t k = rows.size();
  check_order(k);
  std::vector<double> entries;
  entries.reserve(k * k);
  for (const auto& row : rows) {
    if (row.size() != k) {
      throw Error(ErrorKind::kInvalidArgument, "", "pairwise matrix must be square");
    }
    entries.insert(entries.end(), row.begin(), row.end());
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (entries[i * k + i] != 1.0) {
      throw Error(ErrorKind::kInvalidArgument, "", "diagonal entry " + cell(i, i) + " must be 1");
    }
    for (std::size_t j = 0; j < k; ++j) {
      const double a = entries[i * k + j];
      if (!(a > 0.0) || !std::isfinite(a)) {
        throw Error(ErrorKind::kInvalidArgument, "",
                    "entry " + cell(i, j) + " must be a positive finite number");
      }
      if (std::abs(a * entries[j * k + i] - 1.0) > kReciprocityTolerance) {
        throw Error(ErrorKind::kInvalidArgument, "",
                    "entries " + cell(i, j) + " and " + cell(j, i) + " are not reciprocal");
      }
    }
  }
  return PairwiseMatrix(k, std::move(entries));
}

PairwiseMatrix PairwiseMatrix::from_judgments(std::size_t order,
                                              std::span<const Judgment> judgments) {
  check_order(order);
  std::vector<double> entries(order * order, 1.0);
  std::vector<bool> seen(order * order, false);
  for (const Judgment& jd : judgments) {
    if (jd.i >= jd.j || jd.j >= order) {
      throw Error(ErrorKind::kInvalidArgument, "",
                  "judgment " + cell(jd.i, jd.j) + " is not in the upper triangle of a " +
                      std::to_string(order) + "x" + std::to_string(order) + " matrix");
    }
    // Tolerate the rounding in decimal reciprocals such as 0.1111111111.
    if (!std::isfinite(jd.ratio) || jd.ratio < kSaatyMin * (1 - 1e-9) ||
        jd.ratio > kSaatyMax * (1 + 1e-9)) {
      std::ostringstream msg;
      msg << "judgment " << cell(jd.i, jd.j) << " ratio " << jd.ratio
          << " outside the Saaty scale [1/9, 9]";
      throw Error(ErrorKind::kRange, "", msg.str());
    }
    if (seen[jd.i * order + jd.j]) {
      throw Error(ErrorKind::kInvalidArgument, "", "judgment " + cell(jd.i, jd.j) + " repeated");
    }
    seen[jd.i * order + jd.j] = true;
    entries[jd.i * order + jd.j] = jd.ratio;
    entries[jd.j * order + jd.i] = 1.0 / jd.ratio;
  }
  return PairwiseMatrix(order, std::move(entries));
}

PairwiseMatrix PairwiseMatrix::indifferent(std::size_t order) {
  check_order(order);
  return PairwiseMatrix(order, std::vector<double>(order * order, 1.0));
}

PairwiseMatrix PairwiseMatrix::from_weights(std::span<const double> weights) {
  const std::size_t k = weights.size();
  check_order(k);
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error(ErrorKind::kInvalidArgument, "", "weights must be positive");
    }
  }
  std::vector<double> entries(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      entries[i * k + j] = i == j ? 1.0 : weights[i] / weights[j];
    }
  }
  return PairwiseMatrix(k, std::move(entries));
}

PairwiseMatrix PairwiseMatrix::submatrix(std::span<const std::size_t> keep) const {
  check_order(keep.size());
  std::vector<double> entries;
  entries.reserve(keep.size() * keep.size());
  for (std::size_t a = 0; a < keep.size(); ++a) {
    if (keep[a] >= order_ || (a > 0 && keep[a] <= keep[a - 1])) {
      throw Error(ErrorKind::kInvalidArgument, "", "submatrix indices must ascend within range");
    }
  }
  for (std::size_t r : keep) {
    for (std::size_t c : keep) entries.push_back((*this)(r, c));
  }
  return PairwiseMatrix(keep.size(), std::move(entries));
}

std::vector<Judgment> PairwiseMatrix::upper_triangle() const {
  std::vector<Judgment> out;
  for (std::size_t i = 0; i < order_; ++i) {
    for (std::size_t j = i + 1; j < order_; ++j) out.push_back({i, j, (*this)(i, j)});
  }
  return out;
}

double random_index(std::size_t order) {
  // Saaty's published random consistency indices.
  static constexpr std::array<double, 11> kRandomIndex = {
      0.0, 0.0, 0.0, 0.58, 0.90, 1.12, 1.24, 1.32, 1.41, 1.45, 1.49};
  check_order(order);
  return kRandomIndex[order];
}

Priority priority_vector(const PairwiseMatrix& matrix, const PowerIterationOptions& options) {
  const std::size_t k = matrix.order();
  std::vector<double> w(k, 1.0 / static_cast<double>(k));
  std::vector<double> next(k);

  const auto multiply = [&](const std::vector<double>& x, std::vector<double>& y) {
    for (std::size_t i = 0; i < k; ++i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < k; ++j) acc += matrix(i, j) * x[j];
      y[i] = acc;
    }
  };

  Priority result;
  bool converged = false;
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    multiply(w, next);
    const double total = std::accumulate(next.begin(), next.end(), 0.0);
    double delta = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      next[i] /= total;
      delta = std::max(delta, std::abs(next[i] - w[i]));
    }
    w.swap(next);
    if (delta < options.tolerance) {
      result.iterations = it;
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw Error(ErrorKind::kNonConvergence, "",
                "power iteration did not converge within " +
                    std::to_string(options.max_iterations) + " iterations");
  }

  // With sum(w) = 1, sum(A w) = lambda_max.
  multiply(w, next);
  result.lambda_max = std::accumulate(next.begin(), next.end(), 0.0);
  if (k > 2) {
    const double ci = (result.lambda_max - static_cast<double>(k)) / static_cast<double>(k - 1);
    result.consistency_ratio = std::max(0.0, ci / random_index(k));
  }
  result.weights = std::move(w);
  return result;
}

std::vector<double> normalize_alternatives(std::span<const double> values, Influence influence,
                                           double epsilon) {
  if (values.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "", "cannot normalize an empty population");
  }
  for (double v : values) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw Error(ErrorKind::kInvalidArgument, "", "attribute values must be finite and >= 0");
    }
  }
  const auto n = static_cast<double>(values.size());
  std::vector<double> out(values.begin(), values.end());

  if (influence == Influence::kNegative) {
    for (double& v : out) {
      if (v + epsilon == 0.0) {
        throw Error(ErrorKind::kInvalidArgument, "",
                    "zero value for a negative-influence attribute needs epsilon > 0");
      }
      v = 1.0 / (v + epsilon);
    }
  }
  const double total = std::accumulate(out.begin(), out.end(), 0.0);
  if (total == 0.0) {
    std::fill(out.begin(), out.end(), 1.0 / n);
    return out;
  }
  for (double& v : out) v /= total;
  return out;
}

}  // namespace cloudpick::ahp
