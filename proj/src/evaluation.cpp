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

#include "cloudpick/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <unordered_map>

#include "parallel.hpp"

namespace cloudpick {

namespace {

std::string population_name(EntityKind kind) {
  return kind == EntityKind::kVmImage ? "image" : "service";
}

// Resolves each weighted criterion to its definition, rejecting criteria of
// the wrong kind (unless `allow_both`) or without a numerical definition.
std::vector<const NumericalAttributeDef*> resolve_criteria(const WeightVector& weights,
                                                           const AttributeSchema& schema,
                                                           std::optional<EntityKind> only) {
  std::vector<const NumericalAttributeDef*> defs;
  defs.reserve(weights.size());
  for (const auto& [criterion, w] : weights.entries()) {
    if (only && criterion.kind != *only) {
      throw Error(ErrorKind::kKindMismatch, "",
                  "criterion '" + criterion.qualified() + "' cannot score a " +
                      population_name(*only));
    }
    const NumericalAttributeDef* def = schema.find_numerical(criterion.kind, criterion.key);
    if (def == nullptr) {
      throw Error(ErrorKind::kSchema, "",
                  "criterion '" + criterion.qualified() + "' is not a numerical attribute");
    }
    defs.push_back(def);
  }
  return defs;
}

std::vector<RequirementReport> check_in_chunks(std::span<const CatalogEntity> entities,
                                               std::span<const Requirement> requirements,
                                               const AttributeSchema& schema, bool parallel) {
  std::vector<RequirementReport> reports(entities.size());
  detail::parallel_for(entities.size(), parallel, [&](std::size_t begin, std::size_t end) {
    auto part = check_all(entities.subspan(begin, end - begin), requirements, schema);
    std::move(part.begin(), part.end(), reports.begin() + static_cast<std::ptrdiff_t>(begin));
  });
  return reports;
}

// Rank of each id in ascending id order.
std::vector<std::uint32_t> id_order(std::size_t n, const auto& id_of) {
  std::vector<std::uint32_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0u);
  std::sort(idx.begin(), idx.end(),
            [&](std::uint32_t a, std::uint32_t b) { return id_of(a) < id_of(b); });
  std::vector<std::uint32_t> rank(n);
  for (std::size_t r = 0; r < n; ++r) rank[idx[r]] = static_cast<std::uint32_t>(r);
  return rank;
}

struct PairScore {
  double value;
  std::uint32_t image;    // id-order rank
  std::uint32_t service;  // id-order rank
};

bool ranks_before(const PairScore& a, const PairScore& b) {
  if (a.value != b.value) return a.value > b.value;
  if (a.image != b.image) return a.image < b.image;
  return a.service < b.service;
}

// Dense m x n table of pair values and flags, turned into a sorted list.
struct PairTable {
  std::size_t m = 0;
  std::size_t n = 0;
  std::vector<double> value, image_value, service_value;
  std::vector<std::uint32_t> failures;
  std::vector<std::uint8_t> feasible, eligible;

  PairTable(std::size_t m_, std::size_t n_)
      : m(m_), n(n_), value(m_ * n_, 0.0), image_value(m_ * n_, 0.0),
        service_value(m_ * n_, 0.0), failures(m_ * n_, 0), feasible(m_ * n_, 0),
        eligible(m_ * n_, 0) {}

  std::vector<CombinedSolution> ranked(const auto& image_id, const auto& service_id) const {
    const auto image_rank = id_order(m, image_id);
    const auto service_rank = id_order(n, service_id);
    std::vector<std::uint32_t> image_at(m), service_at(n);
    for (std::size_t i = 0; i < m; ++i) image_at[image_rank[i]] = static_cast<std::uint32_t>(i);
    for (std::size_t j = 0; j < n; ++j) service_at[service_rank[j]] = static_cast<std::uint32_t>(j);

    std::vector<PairScore> order;
    order.reserve(m * n);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        order.push_back({value[i * n + j], image_rank[i], service_rank[j]});
      }
    }
    std::sort(order.begin(), order.end(), ranks_before);

    std::vector<CombinedSolution> out;
    out.reserve(order.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
      const std::size_t i = image_at[order[r].image];
      const std::size_t j = service_at[order[r].service];
      const std::size_t k = i * n + j;
      CombinedSolution s;
      s.image_id = image_id(i);
      s.service_id = service_id(j);
      s.combined_value = value[k];
      s.image_value = image_value[k];
      s.service_value = service_value[k];
      s.failure_count = failures[k];
      s.feasible = feasible[k] != 0;
      s.eligible = eligible[k] != 0;
      s.rank = r + 1;
      out.push_back(std::move(s));
    }
    return out;
  }
};

}  // namespace

std::vector<EvaluationResult> evaluate_entities(std::span<const CatalogEntity> entities,
                                                EntityKind kind,
                                                std::span<const Requirement> requirements,
                                                const AttributeSchema& schema,
                                                const WeightVector& weights,
                                                std::size_t relaxation_level,
                                                const EvaluationOptions& options) {
  if (entities.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "", "empty " + population_name(kind) + " set");
  }
  for (const auto& e : entities) {
    if (e.kind != kind) {
      throw Error(ErrorKind::kKindMismatch, "",
                  "entity '" + e.id + "' is not a " + population_name(kind));
    }
  }
  const auto defs = resolve_criteria(weights, schema, kind);
  auto reports = check_in_chunks(entities, requirements, schema, options.parallel);

  std::vector<std::size_t> survivors;
  for (std::size_t i = 0; i < entities.size(); ++i) {
    if (reports[i].failure_count() <= relaxation_level) survivors.push_back(i);
  }

  std::vector<double> value(entities.size(), 0.0);
  if (!survivors.empty()) {
    std::vector<double> column(survivors.size());
    for (std::size_t c = 0; c < defs.size(); ++c) {
      const double w = weights.entries()[c].second;
      for (std::size_t s = 0; s < survivors.size(); ++s) {
        column[s] = entities[survivors[s]].number(defs[c]->key);
      }
      const auto relative = ahp::normalize_alternatives(column, defs[c]->influence, options.epsilon);
      for (std::size_t s = 0; s < survivors.size(); ++s) value[survivors[s]] += w * relative[s];
    }
  }

  std::vector<EvaluationResult> results(entities.size());
  for (std::size_t i = 0; i < entities.size(); ++i) {
    results[i].entity_id = entities[i].id;
    results[i].failed = std::move(reports[i].failed);
    results[i].survived = results[i].failed.size() <= relaxation_level;
    results[i].value = value[i];
  }
  std::sort(results.begin(), results.end(), [](const auto& a, const auto& b) {
    if (a.value != b.value) return a.value > b.value;
    return a.entity_id < b.entity_id;
  });
  for (std::size_t r = 0; r < results.size(); ++r) results[r].rank = r + 1;
  return results;
}

std::vector<EvaluationResult> evaluate_images(const Catalog& catalog,
                                              std::span<const Requirement> requirements,
                                              const GoalHierarchy& hierarchy,
                                              std::size_t relaxation_level,
                                              const EvaluationOptions& options) {
  return evaluate_entities(catalog.images(), EntityKind::kVmImage, requirements,
                           catalog.schema(), hierarchy.global_weights().weights,
                           relaxation_level, options);
}

std::vector<EvaluationResult> evaluate_services(const Catalog& catalog,
                                                std::span<const Requirement> requirements,
                                                const GoalHierarchy& hierarchy,
                                                std::size_t relaxation_level,
                                                const EvaluationOptions& options) {
  return evaluate_entities(catalog.services(), EntityKind::kInfraService, requirements,
                           catalog.schema(), hierarchy.global_weights().weights,
                           relaxation_level, options);
}

// ---------------------------------------------------------------------------

std::string_view to_string(Combiner combiner) {
  return combiner == Combiner::kAdditive ? "additive" : "multiplicative";
}

std::optional<Combiner> parse_combiner(std::string_view text) {
  if (text == "additive") return Combiner::kAdditive;
  if (text == "multiplicative") return Combiner::kMultiplicative;
  return std::nullopt;
}

void CombinationWeights::validate() const {
  if (!(w_a >= 0.0) || !(w_s >= 0.0) || !std::isfinite(w_a) || !std::isfinite(w_s)) {
    throw Error(ErrorKind::kRange, "/combination", "w_a and w_s must be non-negative");
  }
  if (std::abs(w_a + w_s - 1.0) > 1e-9) {
    throw Error(ErrorKind::kRange, "/combination", "w_a + w_s must equal 1");
  }
}

double CombinationWeights::apply(double image_value, double service_value) const {
  if (combiner == Combiner::kMultiplicative) return image_value * service_value;
  return w_a * image_value + w_s * service_value;
}

std::vector<CombinedSolution> combine(std::span<const EvaluationResult> images,
                                      std::span<const EvaluationResult> services,
                                      const DependencySet& dependencies,
                                      const CombinationWeights& weights,
                                      const EvaluationOptions& options) {
  weights.validate();
  const std::size_t m = images.size();
  const std::size_t n = services.size();
  PairTable table(m, n);
  detail::parallel_for(m, options.parallel, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const EvaluationResult& a = images[i];
      for (std::size_t j = 0; j < n; ++j) {
        const EvaluationResult& s = services[j];
        const std::size_t k = i * n + j;
        table.image_value[k] = a.value;
        table.service_value[k] = s.value;
        table.failures[k] = static_cast<std::uint32_t>(a.failure_count() + s.failure_count());
        if (!dependencies.contains(a.entity_id, s.entity_id)) continue;
        table.feasible[k] = 1;
        table.eligible[k] = a.survived && s.survived;
        table.value[k] = weights.apply(a.value, s.value);
      }
    }
  });
  return table.ranked([&](std::size_t i) -> const std::string& { return images[i].entity_id; },
                      [&](std::size_t j) -> const std::string& { return services[j].entity_id; });
}

std::optional<CombinedSolution> best_combination(std::span<const CombinedSolution> ranked) {
  for (const auto& s : ranked) {
    if (s.eligible) return s;
  }
  return std::nullopt;
}

std::optional<CombinedSolution> best_combination(std::span<const EvaluationResult> images,
                                                 std::span<const EvaluationResult> services,
                                                 const DependencySet& dependencies,
                                                 const CombinationWeights& weights) {
  weights.validate();
  const EvaluationResult* best_a = nullptr;
  const EvaluationResult* best_s = nullptr;
  double best = 0.0;
  for (const auto& a : images) {
    if (!a.survived) continue;
    for (const auto& s : services) {
      if (!s.survived || !dependencies.contains(a.entity_id, s.entity_id)) continue;
      const double v = weights.apply(a.value, s.value);
      const bool better =
          best_a == nullptr || v > best ||
          (v == best && (a.entity_id < best_a->entity_id ||
                         (a.entity_id == best_a->entity_id && s.entity_id < best_s->entity_id)));
      if (better) {
        best = v;
        best_a = &a;
        best_s = &s;
      }
    }
  }
  if (best_a == nullptr) return std::nullopt;
  CombinedSolution out;
  out.image_id = best_a->entity_id;
  out.service_id = best_s->entity_id;
  out.combined_value = best;
  out.image_value = best_a->value;
  out.service_value = best_s->value;
  out.failure_count = best_a->failure_count() + best_s->failure_count();
  out.feasible = true;
  out.eligible = true;
  out.rank = 1;
  return out;
}

// ---------------------------------------------------------------------------

namespace {

struct PairIndex {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (image, service) catalog indices
};

PairIndex feasible_pairs(const Catalog& catalog) {
  std::unordered_map<std::string_view, std::size_t> image_at, service_at;
  for (std::size_t i = 0; i < catalog.images().size(); ++i) image_at[catalog.images()[i].id] = i;
  for (std::size_t j = 0; j < catalog.services().size(); ++j) {
    service_at[catalog.services()[j].id] = j;
  }
  PairIndex out;
  out.pairs.reserve(catalog.dependencies().size());
  for (const auto& [image, service] : catalog.dependencies().pairs()) {
    out.pairs.emplace_back(image_at.at(image), service_at.at(service));
  }
  return out;
}

}  // namespace

std::size_t minimal_integrated_relaxation(const Catalog& catalog,
                                          std::span<const Requirement> image_requirements,
                                          std::span<const Requirement> service_requirements) {
  const auto image_reports = check_all(catalog.images(), image_requirements, catalog.schema());
  const auto service_reports =
      check_all(catalog.services(), service_requirements, catalog.schema());
  const PairIndex index = feasible_pairs(catalog);
  if (index.pairs.empty()) return 0;
  std::size_t best = image_requirements.size() + service_requirements.size();
  for (const auto& [i, j] : index.pairs) {
    best = std::min(best, image_reports[i].failure_count() + service_reports[j].failure_count());
  }
  return best;
}

std::vector<CombinedSolution> evaluate_integrated(const Catalog& catalog,
                                                  std::span<const Requirement> image_requirements,
                                                  std::span<const Requirement> service_requirements,
                                                  const WeightVector& weights,
                                                  std::size_t relaxation_level,
                                                  const EvaluationOptions& options) {
  const auto& images = catalog.images();
  const auto& services = catalog.services();
  if (images.empty() || services.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "",
                "integrated evaluation needs at least one image and one service");
  }
  const auto defs = resolve_criteria(weights, catalog.schema(), std::nullopt);
  const auto image_reports =
      check_in_chunks(images, image_requirements, catalog.schema(), options.parallel);
  const auto service_reports =
      check_in_chunks(services, service_requirements, catalog.schema(), options.parallel);

  const std::size_t m = images.size();
  const std::size_t n = services.size();
  PairTable table(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      table.failures[i * n + j] = static_cast<std::uint32_t>(
          image_reports[i].failure_count() + service_reports[j].failure_count());
    }
  }

  // Population: feasible pairs within the relaxation level.
  std::vector<std::pair<std::size_t, std::size_t>> population;
  for (const auto& [i, j] : feasible_pairs(catalog).pairs) {
    const std::size_t k = i * n + j;
    table.feasible[k] = 1;
    if (table.failures[k] <= relaxation_level) {
      table.eligible[k] = 1;
      population.emplace_back(i, j);
    }
  }

  if (!population.empty()) {
    std::vector<double> column(population.size());
    for (std::size_t c = 0; c < defs.size(); ++c) {
      const auto& [criterion, w] = weights.entries()[c];
      const bool on_image = criterion.kind == EntityKind::kVmImage;
      for (std::size_t p = 0; p < population.size(); ++p) {
        const auto& [i, j] = population[p];
        column[p] = on_image ? images[i].number(criterion.key) : services[j].number(criterion.key);
      }
      const auto relative = ahp::normalize_alternatives(column, defs[c]->influence, options.epsilon);
      for (std::size_t p = 0; p < population.size(); ++p) {
        const std::size_t k = population[p].first * n + population[p].second;
        (on_image ? table.image_value : table.service_value)[k] += w * relative[p];
      }
    }
    for (const auto& [i, j] : population) {
      const std::size_t k = i * n + j;
      table.value[k] = table.image_value[k] + table.service_value[k];
    }
  }

  return table.ranked([&](std::size_t i) -> const std::string& { return images[i].id; },
                      [&](std::size_t j) -> const std::string& { return services[j].id; });
}

std::vector<CombinedSolution> evaluate_integrated(const Catalog& catalog,
                                                  std::span<const Requirement> image_requirements,
                                                  std::span<const Requirement> service_requirements,
                                                  const GoalHierarchy& hierarchy,
                                                  std::size_t relaxation_level,
                                                  const EvaluationOptions& options) {
  return evaluate_integrated(catalog, image_requirements, service_requirements,
                             hierarchy.global_weights().weights, relaxation_level, options);
}

}  // namespace cloudpick
