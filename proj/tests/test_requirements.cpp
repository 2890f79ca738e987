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
#include <random>

#include "cloudpick/requirements.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

namespace cloudpick {
namespace {

const AttributeSchema kSchema = AttributeSchema::builtin();

CatalogEntity service_with_price(double price) {
  CatalogEntity e;
  e.id = "svc";
  e.kind = EntityKind::kInfraService;
  e.numerical[std::string(attr::kHourlyPrice)] = price;
  return e;
}

CatalogEntity image_with_languages(std::vector<std::string> langs, std::string os = "Linux") {
  CatalogEntity e;
  e.id = "img";
  e.kind = EntityKind::kVmImage;
  e.non_numerical[std::string(attr::kSupportedImplLanguages)] = std::move(langs);
  e.non_numerical[std::string(attr::kOperatingSystem)] = std::move(os);
  return e;
}

Requirement price_max(double bound) {
  return {EntityKind::kInfraService, std::string(attr::kHourlyPrice), Max{bound}};
}

TEST(Predicate, MaxIsStrict) {
  EXPECT_TRUE(satisfies(service_with_price(0.5), price_max(1.0)));
  EXPECT_FALSE(satisfies(service_with_price(1.0), price_max(1.0)));
  EXPECT_FALSE(satisfies(service_with_price(1.5), price_max(1.0)));
}

TEST(Predicate, MinIsStrict) {
  const Requirement r{EntityKind::kInfraService, std::string(attr::kHourlyPrice), Min{1.0}};
  EXPECT_TRUE(satisfies(service_with_price(1.01), r));
  EXPECT_FALSE(satisfies(service_with_price(1.0), r));
}

TEST(Predicate, SetValuedEqualsUsesMembership) {
  const Requirement php{EntityKind::kVmImage, std::string(attr::kSupportedImplLanguages),
                        Equals{"PHP"}};
  EXPECT_TRUE(satisfies(image_with_languages({"Java", "PHP"}), php));
  EXPECT_FALSE(satisfies(image_with_languages({"Java"}), php));
}

TEST(Predicate, OneOfIntersection) {
  const Requirement r{EntityKind::kVmImage, std::string(attr::kSupportedImplLanguages),
                      OneOf{{"Ruby", "php"}}};
  EXPECT_TRUE(satisfies(image_with_languages({"Java", "PHP"}), r));
  EXPECT_FALSE(satisfies(image_with_languages({"Java", "Perl"}), r));
}

TEST(Predicate, CaseAndWhitespaceInsensitive) {
  const Requirement r{EntityKind::kVmImage, std::string(attr::kOperatingSystem),
                      Equals{"  linux "}};
  EXPECT_TRUE(satisfies(image_with_languages({}, "LINUX"), r));
  EXPECT_FALSE(satisfies(image_with_languages({}, "Windows"), r));
  EXPECT_EQ(normalize_text("  MiXeD Case\t"), "mixed case");
}

TEST(Predicate, MissingAttributeFails) {
  CatalogEntity e;
  e.kind = EntityKind::kVmImage;
  EXPECT_FALSE(satisfies(e, {EntityKind::kVmImage, "image_feature", Equals{"Web server"}}));
}

TEST(Validate, PairingOfPredicateAndType) {
  EXPECT_NO_THROW(validate_requirement(price_max(1), kSchema));
  EXPECT_THROW(validate_requirement({EntityKind::kInfraService, "hourly_price", Equals{"1"}},
                                    kSchema),
               Error);
  EXPECT_THROW(validate_requirement({EntityKind::kVmImage, "operating_system", Max{1}}, kSchema),
               Error);
  EXPECT_THROW(validate_requirement({EntityKind::kVmImage, "colour", Equals{"red"}}, kSchema),
               Error);
  // Service attribute requested on images.
  EXPECT_THROW(validate_requirement({EntityKind::kVmImage, "uptime", Min{1}}, kSchema), Error);
  try {
    validate_requirement({EntityKind::kVmImage, "operating_system", OneOf{}}, kSchema);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kInvalidArgument);
  }
}

TEST(Check, KindMismatchAndPath) {
  const std::vector<Requirement> reqs = {
      {EntityKind::kVmImage, "popularity", Min{1}}};
  try {
    check(service_with_price(1), reqs, kSchema);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kKindMismatch);
    EXPECT_EQ(e.path(), "/requirements/0");
  }
}

TEST(Check, ReportsFailedIndices) {
  const std::vector<Requirement> reqs = {price_max(1.0), price_max(0.1), price_max(0.4)};
  const auto report = check(service_with_price(0.3), reqs, kSchema);
  EXPECT_EQ(report.entity_id, "svc");
  EXPECT_EQ(report.failed, (std::vector<std::size_t>{1}));
  EXPECT_EQ(report.failure_count(), 1u);
}

std::vector<CatalogEntity> with_failure_counts() {
  // Against reqs Max 1, Max 2: prices 0.5 (0 failures), 1.5 (1), 3 (2).
  std::vector<CatalogEntity> out;
  for (double p : {0.5, 1.5, 3.0}) {
    auto e = service_with_price(p);
    e.id = "s" + std::to_string(out.size());
    out.push_back(e);
  }
  return out;
}

TEST(Relaxation, Levels) {
  const auto entities = with_failure_counts();
  const std::vector<Requirement> reqs = {price_max(1.0), price_max(2.0)};
  auto ids = [](const std::vector<RequirementReport>& rs) {
    std::vector<std::string> out;
    for (const auto& r : rs) out.push_back(r.entity_id);
    return out;
  };
  EXPECT_EQ(ids(filter_with_relaxation(entities, reqs, kSchema, 0)),
            (std::vector<std::string>{"s0"}));
  EXPECT_EQ(ids(filter_with_relaxation(entities, reqs, kSchema, 1)),
            (std::vector<std::string>{"s0", "s1"}));
  EXPECT_EQ(filter_with_relaxation(entities, reqs, kSchema, 2).size(), 3u);
  EXPECT_THROW(filter_with_relaxation(entities, reqs, kSchema, 3), Error);
}

TEST(Relaxation, EmptyRequirementList) {
  const auto entities = with_failure_counts();
  const auto survivors = filter_with_relaxation(entities, {}, kSchema, 0);
  ASSERT_EQ(survivors.size(), 3u);
  for (const auto& r : survivors) EXPECT_EQ(r.failure_count(), 0u);
  EXPECT_EQ(minimal_relaxation(entities, {}, kSchema), 0u);
}

TEST(MinimalRelaxation, Examples) {
  const auto entities = with_failure_counts();
  EXPECT_EQ(minimal_relaxation(entities, std::vector<Requirement>{price_max(1.0)}, kSchema), 0u);

  // The best entity fails 2 of 5.
  const std::vector<Requirement> five = {price_max(0.1), price_max(0.2), price_max(1.0),
                                         price_max(2.0), price_max(5.0)};
  EXPECT_EQ(minimal_relaxation(entities, five, kSchema), 2u);

  const std::vector<CatalogEntity> single = {service_with_price(5.0)};
  EXPECT_EQ(minimal_relaxation(single, std::vector<Requirement>{price_max(1.0)}, kSchema), 1u);

  EXPECT_THROW(minimal_relaxation(std::vector<CatalogEntity>{}, {}, kSchema), Error);
}

TEST(MinimalRelaxation, BruteForceAgreement) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const Catalog c = oracle::random_catalog(rng, 6, 6);
    const auto reqs = oracle::only(EntityKind::kVmImage, oracle::random_requirements(rng, 8));
    std::size_t expected = reqs.size();
    for (std::size_t k = 0; k <= reqs.size(); ++k) {
      const bool any = std::any_of(c.images().begin(), c.images().end(), [&](const auto& e) {
        return oracle::failures(e, reqs) <= k;
      });
      if (any) {
        expected = k;
        break;
      }
    }
    EXPECT_EQ(minimal_relaxation(c.images(), reqs, c.schema()), expected);
  }
}

TEST(RelaxationProperty, CountsMatchOracleAndNest) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    const Catalog c = oracle::random_catalog(rng, 8, 8);
    const auto all = oracle::random_requirements(rng, 1 + trial % 7);
    for (EntityKind kind : {EntityKind::kVmImage, EntityKind::kInfraService}) {
      const auto reqs = oracle::only(kind, all);
      const auto& entities = c.entities(kind);
      const auto reports = check_all(entities, reqs, c.schema());
      for (std::size_t i = 0; i < entities.size(); ++i) {
        ASSERT_EQ(reports[i].failure_count(), oracle::failures(entities[i], reqs));
        for (std::size_t idx : reports[i].failed) {
          ASSERT_FALSE(oracle::passes(entities[i], reqs[idx]));
        }
      }
      std::vector<std::string> previous;
      for (std::size_t k = 0; k <= reqs.size(); ++k) {
        std::vector<std::string> now;
        for (const auto& r : filter_with_relaxation(entities, reqs, c.schema(), k)) {
          now.push_back(r.entity_id);
        }
        for (const auto& id : previous) {
          ASSERT_NE(std::find(now.begin(), now.end(), id), now.end());
        }
        previous = now;
      }
    }
  }
}

TEST(Describe, ReadableForms) {
  EXPECT_EQ(describe(price_max(0.5)), "service.hourly_price < 0.5");
  EXPECT_EQ(describe({EntityKind::kVmImage, "popularity", Min{80}}), "image.popularity > 80");
}

}  // namespace
}  // namespace cloudpick
