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

#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>

#include "cloudpick/evaluation.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

namespace cloudpick {
namespace {

constexpr auto kImg = EntityKind::kVmImage;
constexpr auto kSvc = EntityKind::kInfraService;

WeightVector weights(EntityKind kind, std::vector<std::pair<std::string, double>> entries) {
  std::vector<std::pair<CriterionRef, double>> out;
  for (auto& [key, w] : entries) out.push_back({{kind, key}, w});
  return WeightVector(std::move(out));
}

std::vector<oracle::Criterion> criteria_of(const WeightVector& w, const AttributeSchema& schema) {
  std::vector<oracle::Criterion> out;
  for (const auto& [c, weight] : w.entries()) {
    out.push_back({c.key, schema.find_numerical(c.kind, c.key)->influence, weight});
  }
  return out;
}

const EvaluationResult& by_id(const std::vector<EvaluationResult>& rs, const std::string& id) {
  return *std::find_if(rs.begin(), rs.end(), [&](const auto& r) { return r.entity_id == id; });
}

Catalog two_images() {
  auto doc = fixtures::minimal_catalog();
  doc["images"] = {fixtures::image_json("x", 1, 80), fixtures::image_json("y", 2, 20)};
  doc["dependencies"] = nlohmann::json::array();
  return fixtures::load(doc);
}

TEST(EvaluateImages, SingleImageHoldsAllMass) {
  const Catalog c = fixtures::load(fixtures::minimal_catalog());
  const auto r = evaluate_images(c, {}, default_image_hierarchy(), 0);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_NEAR(r[0].value, 1.0, 1e-12);
  EXPECT_EQ(r[0].rank, 1u);
  EXPECT_TRUE(r[0].survived);
}

TEST(EvaluateImages, HandComputedPair) {
  const auto r = evaluate_images(two_images(), {}, default_image_hierarchy(), 0);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(r[0].entity_id, "x");
  // Price 1 vs 2 (negative): 2/3 to x. Popularity 80 vs 20: 0.8 to x.
  EXPECT_NEAR(r[0].value, 0.5 * (2.0 / 3) + 0.5 * 0.8, 1e-6);
  EXPECT_NEAR(r[1].value, 0.5 * (1.0 / 3) + 0.5 * 0.2, 1e-6);
}

TEST(EvaluateImages, FailingImageIsExactlyZero) {
  const Catalog c = two_images();
  const std::vector<Requirement> reqs = {{kImg, "popularity", Min{50}}};
  const auto r = evaluate_images(c, reqs, default_image_hierarchy(), 0);
  EXPECT_EQ(by_id(r, "y").value, 0.0);
  EXPECT_FALSE(by_id(r, "y").survived);
  EXPECT_EQ(by_id(r, "y").failed, (std::vector<std::size_t>{0}));
  EXPECT_NEAR(by_id(r, "x").value, 1.0, 1e-12);
  // Relaxing one failure brings y back.
  const auto relaxed = evaluate_images(c, reqs, default_image_hierarchy(), 1);
  EXPECT_GT(by_id(relaxed, "y").value, 0.0);
}

TEST(EvaluateServices, Examples) {
  auto doc = fixtures::minimal_catalog();
  doc["services"] = {fixtures::service_json("a", 1, 99.0), fixtures::service_json("b", 1, 99.9),
                     fixtures::service_json("c", 1, 95.0)};
  doc["dependencies"] = nlohmann::json::array();
  const Catalog c = fixtures::load(doc);

  const auto uniform = evaluate_entities(c.services(), kSvc, {}, c.schema(),
                                         default_service_hierarchy().global_weights().weights, 0);
  double total = 0.0;
  for (const auto& r : uniform) total += r.value;
  EXPECT_NEAR(total, 1.0, 1e-12);

  const auto uptime = evaluate_entities(c.services(), kSvc, {}, c.schema(),
                                        weights(kSvc, {{"uptime", 1.0}}), 0);
  EXPECT_EQ(uptime[0].entity_id, "b");
  EXPECT_EQ(uptime[1].entity_id, "a");
  EXPECT_EQ(uptime[2].entity_id, "c");
}

TEST(EvaluateServices, IdenticalServicesAreUniform) {
  auto doc = fixtures::minimal_catalog();
  doc["services"] = {fixtures::service_json("s2", 1), fixtures::service_json("s1", 1),
                     fixtures::service_json("s3", 1), fixtures::service_json("s0", 1)};
  doc["dependencies"] = nlohmann::json::array();
  const Catalog c = fixtures::load(doc);
  const auto r = evaluate_services(c, {}, default_service_hierarchy(), 0);
  for (const auto& x : r) EXPECT_NEAR(x.value, 0.25, 1e-12);
  // Ties fall back to ascending id.
  EXPECT_EQ(r[0].entity_id, "s0");
  EXPECT_EQ(r[3].entity_id, "s3");
}

TEST(EvaluateEntities, Errors) {
  const Catalog c = two_images();
  EXPECT_THROW(evaluate_entities(std::span<const CatalogEntity>{}, kImg, {}, c.schema(),
                                 weights(kImg, {{"popularity", 1}}), 0),
               Error);
  EXPECT_THROW(evaluate_entities(c.images(), kImg, {}, c.schema(),
                                 weights(kSvc, {{"uptime", 1}}), 0),
               Error);
  EXPECT_THROW(evaluate_entities(c.images(), kImg, {}, c.schema(),
                                 weights(kImg, {{"operating_system", 1}}), 0),
               Error);
}

EvaluationResult scored(std::string id, double value, bool survived = true) {
  EvaluationResult r;
  r.entity_id = std::move(id);
  r.value = value;
  r.survived = survived;
  return r;
}

TEST(Combine, Arithmetic) {
  const std::vector<EvaluationResult> images = {scored("a", 0.8)};
  const std::vector<EvaluationResult> services = {scored("s", 0.6), scored("t", 0.4)};
  const DependencySet d(std::vector<DependencyPair>{{"a", "s"}});
  const auto r = combine(images, services, d, {0.5, 0.5, Combiner::kAdditive});
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(r[0].combined_value, 0.7, 1e-12);
  EXPECT_TRUE(r[0].feasible);
  EXPECT_EQ(r[1].service_id, "t");
  EXPECT_EQ(r[1].combined_value, 0.0);
  EXPECT_FALSE(r[1].feasible);

  const auto product = combine(images, services, d, {0.5, 0.5, Combiner::kMultiplicative});
  EXPECT_NEAR(product[0].combined_value, 0.48, 1e-12);
}

TEST(Combine, ImageOnlyWeightFollowsImageRanking) {
  std::mt19937_64 rng(11);
  const Catalog c = oracle::random_catalog(rng, 8, 6, {0.6, false});
  const auto images = evaluate_images(c, {}, default_image_hierarchy(), 0);
  const auto services = evaluate_services(c, {}, default_service_hierarchy(), 0);
  const auto r = combine(images, services, c.dependencies(), {1.0, 0.0, Combiner::kAdditive});
  std::map<std::string, double> image_value;
  for (const auto& i : images) image_value[i.entity_id] = i.value;
  double previous = 2.0;
  for (const auto& p : r) {
    if (!p.feasible) continue;
    EXPECT_EQ(p.combined_value, image_value[p.image_id]);
    EXPECT_LE(p.combined_value, previous);
    previous = p.combined_value;
  }
}

TEST(Combine, WeightsValidated) {
  EXPECT_THROW((CombinationWeights{0.6, 0.6}.validate()), Error);
  EXPECT_THROW((CombinationWeights{1.2, -0.2}.validate()), Error);
  EXPECT_NO_THROW((CombinationWeights{0.3, 0.7}.validate()));
  EXPECT_EQ(parse_combiner("multiplicative"), Combiner::kMultiplicative);
  EXPECT_EQ(parse_combiner("sum"), std::nullopt);
}

TEST(BestCombination, OutcomesAndTies) {
  const std::vector<EvaluationResult> images = {scored("b", 0.5), scored("a", 0.5)};
  const std::vector<EvaluationResult> services = {scored("s", 1.0)};
  const CombinationWeights w{0.5, 0.5, Combiner::kAdditive};

  const DependencySet none;
  EXPECT_FALSE(best_combination(images, services, none, w));
  EXPECT_FALSE(best_combination(combine(images, services, none, w)));

  const DependencySet both({{"a", "s"}, {"b", "s"}});
  const auto best = best_combination(images, services, both, w);
  ASSERT_TRUE(best);
  EXPECT_EQ(best->image_id, "a");

  const DependencySet single(std::vector<DependencyPair>{{"b", "s"}});
  EXPECT_EQ(best_combination(images, services, single, w)->image_id, "b");

  // A feasible pair whose image was eliminated never wins.
  const std::vector<EvaluationResult> gated = {scored("a", 0.0, false)};
  EXPECT_FALSE(best_combination(gated, services, DependencySet(std::vector<DependencyPair>{{"a", "s"}}), w));
}

struct Scenario {
  Catalog catalog;
  std::vector<Requirement> image_reqs;
  std::vector<Requirement> service_reqs;
  std::size_t image_level;
  std::size_t service_level;
};

std::optional<oracle::Pick> oracle_best(const Scenario& s, const WeightVector& wi,
                                        const WeightVector& ws, const CombinationWeights& cw) {
  const Catalog& c = s.catalog;
  auto survived = [](const std::vector<CatalogEntity>& es, const std::vector<Requirement>& reqs,
                     std::size_t level) {
    std::vector<bool> out;
    for (const auto& e : es) out.push_back(oracle::failures(e, reqs) <= level);
    return out;
  };
  return oracle::best_pair(
      c.images(), oracle::values(c.images(), s.image_reqs, criteria_of(wi, c.schema()), s.image_level),
      survived(c.images(), s.image_reqs, s.image_level), c.services(),
      oracle::values(c.services(), s.service_reqs, criteria_of(ws, c.schema()), s.service_level),
      survived(c.services(), s.service_reqs, s.service_level), c.dependencies().pairs(), cw.w_a,
      cw.w_s, cw.combiner == Combiner::kMultiplicative);
}

TEST(BestCombination, MatchesBruteForceOracle) {
  std::mt19937_64 rng(2024);
  const auto wi = default_image_hierarchy().global_weights().weights;
  const auto ws = default_service_hierarchy().global_weights().weights;
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t m = 1 + trial % 12;
    const std::size_t n = 1 + (trial * 7) % 12;
    Scenario s{oracle::random_catalog(rng, m, n, {0.4, trial % 2 == 0}), {}, {}, 0, 0};
    const auto reqs = oracle::random_requirements(rng, trial % 5);
    s.image_reqs = oracle::only(kImg, reqs);
    s.service_reqs = oracle::only(kSvc, reqs);
    s.image_level = minimal_relaxation(s.catalog.images(), s.image_reqs, s.catalog.schema());
    s.service_level = minimal_relaxation(s.catalog.services(), s.service_reqs, s.catalog.schema());
    const CombinationWeights cw{0.3 + 0.1 * (trial % 5), 0.7 - 0.1 * (trial % 5),
                                trial % 3 == 0 ? Combiner::kMultiplicative : Combiner::kAdditive};

    const auto images = evaluate_entities(s.catalog.images(), kImg, s.image_reqs,
                                          s.catalog.schema(), wi, s.image_level);
    const auto services = evaluate_entities(s.catalog.services(), kSvc, s.service_reqs,
                                            s.catalog.schema(), ws, s.service_level);
    const auto expected = oracle_best(s, wi, ws, cw);
    const auto streamed = best_combination(images, services, s.catalog.dependencies(), cw);
    const auto ranked = best_combination(combine(images, services, s.catalog.dependencies(), cw));
    ASSERT_EQ(expected.has_value(), streamed.has_value()) << "trial " << trial;
    ASSERT_EQ(expected.has_value(), ranked.has_value());
    if (!expected) continue;
    EXPECT_NEAR(streamed->combined_value, expected->value, 1e-9) << "trial " << trial;
    EXPECT_EQ(streamed->image_id, ranked->image_id);
    EXPECT_EQ(streamed->service_id, ranked->service_id);
    // Value ties within rounding can legitimately pick another pair; the
    // exact pick must match whenever the oracle's winner is unique.
    EXPECT_NEAR(ranked->combined_value, expected->value, 1e-9);
  }
}

TEST(EvaluationProperty, SurvivorValuesAndZeros) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const Catalog c = oracle::random_catalog(rng, 10, 10);
    const auto reqs = oracle::only(kSvc, oracle::random_requirements(rng, 4));
    const auto ws = default_service_hierarchy().global_weights().weights;
    const auto r = evaluate_entities(c.services(), kSvc, reqs, c.schema(), ws, 0);
    const auto expected = oracle::values(c.services(), reqs, criteria_of(ws, c.schema()), 0);
    for (std::size_t i = 0; i < c.services().size(); ++i) {
      const auto& got = by_id(r, c.services()[i].id);
      EXPECT_NEAR(got.value, expected[i], 1e-9);
      if (got.survived) {
        EXPECT_GT(got.value, 0.0);
        EXPECT_LE(got.value, 1.0 + 1e-12);
      } else {
        EXPECT_EQ(got.value, 0.0);
      }
    }
    for (std::size_t i = 1; i < r.size(); ++i) {
      EXPECT_TRUE(r[i - 1].value > r[i].value ||
                  (r[i - 1].value == r[i].value && r[i - 1].entity_id < r[i].entity_id));
      EXPECT_EQ(r[i].rank, i + 1);
    }
  }
}

TEST(EvaluationProperty, ScalingPositiveColumnKeepsRanking) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Catalog c = oracle::random_catalog(rng, 12, 2, {0.5, false});
    const auto wi = default_image_hierarchy().global_weights().weights;
    const auto base = evaluate_images(c, {}, default_image_hierarchy(), 0);
    for (double factor : {0.1, 10.0, 1000.0}) {
      std::vector<CatalogEntity> scaled = c.images();
      for (auto& e : scaled) e.numerical["popularity"] *= factor;
      const auto r = evaluate_entities(scaled, kImg, {}, c.schema(), wi, 0);
      for (std::size_t i = 0; i < r.size(); ++i) {
        EXPECT_EQ(r[i].entity_id, base[i].entity_id);
        EXPECT_NEAR(r[i].value, base[i].value, 1e-12);
      }
    }
  }
}

TEST(CombineProperty, AdditiveIsMonotone) {
  std::vector<EvaluationResult> images = {scored("a", 0.2), scored("b", 0.5), scored("c", 0.3)};
  const std::vector<EvaluationResult> services = {scored("s", 0.6), scored("t", 0.4)};
  const DependencySet d({{"a", "s"}, {"a", "t"}, {"b", "s"}, {"c", "t"}});
  const CombinationWeights cw{0.5, 0.5, Combiner::kAdditive};
  auto rank_of_a_s = [&] {
    for (const auto& p : combine(images, services, d, cw)) {
      if (p.image_id == "a" && p.service_id == "s") return p.rank;
    }
    return std::size_t{0};
  };
  std::size_t previous = rank_of_a_s();
  for (double v : {0.3, 0.5, 0.7, 0.9}) {
    images[0].value = v;
    const std::size_t now = rank_of_a_s();
    EXPECT_LE(now, previous);
    previous = now;
  }
  EXPECT_EQ(previous, 1u);
}

TEST(Parallel, MatchesSequentialExactly) {
  const Catalog c = generate_synthetic_catalog(300, 200, 9, {0.3, 4});
  const std::vector<Requirement> reqs = {{kSvc, "uptime", Min{40}}};
  EvaluationOptions seq;
  EvaluationOptions par;
  par.parallel = true;
  const auto si = evaluate_images(c, {}, default_image_hierarchy(), 0, seq);
  const auto pi = evaluate_images(c, {}, default_image_hierarchy(), 0, par);
  const auto ss = evaluate_services(c, reqs, default_service_hierarchy(), 0, seq);
  const auto ps = evaluate_services(c, reqs, default_service_hierarchy(), 0, par);
  ASSERT_EQ(si.size(), pi.size());
  for (std::size_t i = 0; i < si.size(); ++i) {
    EXPECT_EQ(si[i].entity_id, pi[i].entity_id);
    EXPECT_EQ(si[i].value, pi[i].value);
  }
  for (std::size_t i = 0; i < ss.size(); ++i) {
    EXPECT_EQ(ss[i].entity_id, ps[i].entity_id);
    EXPECT_EQ(ss[i].value, ps[i].value);
  }
  const CombinationWeights cw;
  const auto sc = combine(si, ss, c.dependencies(), cw, seq);
  const auto pc = combine(pi, ps, c.dependencies(), cw, par);
  ASSERT_EQ(sc.size(), pc.size());
  for (std::size_t i = 0; i < sc.size(); i += 97) {
    EXPECT_EQ(sc[i].image_id, pc[i].image_id);
    EXPECT_EQ(sc[i].service_id, pc[i].service_id);
    EXPECT_EQ(sc[i].combined_value, pc[i].combined_value);
  }
}

TEST(Integrated, SingleFeasiblePair) {
  auto doc = fixtures::minimal_catalog();
  doc["services"].push_back(fixtures::service_json("svc-b", 0.3));
  const Catalog c = fixtures::load(doc);
  const auto h = integrated_hierarchy(default_image_hierarchy(), default_service_hierarchy(), 0.5,
                                      0.5);
  const auto r = evaluate_integrated(c, {}, {}, h, 0);
  const auto best = best_combination(r);
  ASSERT_TRUE(best);
  EXPECT_EQ(best->service_id, "svc-a");
  EXPECT_NEAR(best->combined_value, 1.0, 1e-12);
}

TEST(Integrated, NoFeasiblePair) {
  auto doc = fixtures::minimal_catalog();
  doc["dependencies"] = nlohmann::json::array();
  const Catalog c = fixtures::load(doc);
  const auto h = integrated_hierarchy(default_image_hierarchy(), default_service_hierarchy(), 0.5,
                                      0.5);
  EXPECT_FALSE(best_combination(evaluate_integrated(c, {}, {}, h, 0)));
  EXPECT_EQ(minimal_integrated_relaxation(c, {}, {}), 0u);
}

// On a full cross product each image criterion is shared evenly across the
// services it pairs with, so the integrated value is a scaled two-phase value.
TEST(Integrated, ArgmaxAgreesWithTwoPhaseOnCrossProduct) {
  std::mt19937_64 rng(31);
  const auto hi = default_image_hierarchy();
  const auto hs = default_service_hierarchy();
  for (int trial = 0; trial < 40; ++trial) {
    const Catalog c = oracle::random_catalog(rng, 5, 5, {1.0, false});
    const double w_a = 0.2 + 0.15 * (trial % 5);
    const CombinationWeights cw{w_a, 1.0 - w_a, Combiner::kAdditive};
    const auto integrated = best_combination(
        evaluate_integrated(c, {}, {}, integrated_hierarchy(hi, hs, cw.w_a, cw.w_s), 0));
    const auto images = evaluate_images(c, {}, hi, 0);
    const auto services = evaluate_services(c, {}, hs, 0);
    const auto two_phase = best_combination(images, services, c.dependencies(), cw);
    ASSERT_TRUE(integrated && two_phase);
    EXPECT_EQ(integrated->image_id, two_phase->image_id) << "trial " << trial;
    EXPECT_EQ(integrated->service_id, two_phase->service_id);
    EXPECT_NEAR(integrated->combined_value * 5, two_phase->combined_value, 1e-9);
  }
}

TEST(Integrated, FailuresAddUpAcrossSides) {
  std::mt19937_64 rng(41);
  const Catalog c = oracle::random_catalog(rng, 6, 6, {0.5, true});
  const auto reqs = oracle::random_requirements(rng, 6);
  const auto ir = oracle::only(kImg, reqs);
  const auto sr = oracle::only(kSvc, reqs);
  const std::size_t level = minimal_integrated_relaxation(c, ir, sr);
  const auto h = integrated_hierarchy(default_image_hierarchy(), default_service_hierarchy(), 0.5,
                                      0.5);
  std::size_t least = SIZE_MAX;
  for (const auto& p : evaluate_integrated(c, ir, sr, h, level)) {
    if (!p.feasible) continue;
    const std::size_t total = oracle::failures(*c.find(kImg, p.image_id), ir) +
                              oracle::failures(*c.find(kSvc, p.service_id), sr);
    EXPECT_EQ(p.failure_count, total);
    EXPECT_EQ(p.eligible, total <= level);
    least = std::min(least, total);
  }
  if (!c.dependencies().empty()) EXPECT_EQ(level, least);
}

}  // namespace
}  // namespace cloudpick
