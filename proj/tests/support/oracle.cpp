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

#include "oracle.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <tuple>

namespace oracle {

using cloudpick::Equals;
using cloudpick::Max;
using cloudpick::Min;
using cloudpick::OneOf;

namespace {

std::string fold(std::string s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  std::size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::vector<std::string> held_values(const CatalogEntity& e, const std::string& key) {
  auto it = e.non_numerical.find(key);
  if (it == e.non_numerical.end()) return {};
  if (const auto* s = std::get_if<std::string>(&it->second)) return {fold(*s)};
  std::vector<std::string> out;
  for (const auto& v : std::get<std::vector<std::string>>(it->second)) out.push_back(fold(v));
  return out;
}

}  // namespace

bool passes(const CatalogEntity& e, const Requirement& req) {
  if (const auto* p = std::get_if<Max>(&req.predicate)) {
    auto it = e.numerical.find(req.attribute_key);
    return it != e.numerical.end() && it->second < p->bound;
  }
  if (const auto* p = std::get_if<Min>(&req.predicate)) {
    auto it = e.numerical.find(req.attribute_key);
    return it != e.numerical.end() && it->second > p->bound;
  }
  std::vector<std::string> accepted;
  if (const auto* p = std::get_if<Equals>(&req.predicate)) accepted.push_back(fold(p->value));
  if (const auto* p = std::get_if<OneOf>(&req.predicate)) {
    for (const auto& v : p->values) accepted.push_back(fold(v));
  }
  for (const auto& held : held_values(e, req.attribute_key)) {
    if (std::find(accepted.begin(), accepted.end(), held) != accepted.end()) return true;
  }
  return false;
}

std::size_t failures(const CatalogEntity& e, const std::vector<Requirement>& reqs) {
  std::size_t n = 0;
  for (const auto& r : reqs) n += passes(e, r) ? 0 : 1;
  return n;
}

Eigen principal(const std::vector<std::vector<double>>& rows) {
  const auto k = static_cast<::Eigen::Index>(rows.size());
  ::Eigen::MatrixXd a(k, k);
  for (::Eigen::Index i = 0; i < k; ++i) {
    for (::Eigen::Index j = 0; j < k; ++j) {
      a(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  ::Eigen::EigenSolver<::Eigen::MatrixXd> solver(a);
  ::Eigen::Index best = 0;
  for (::Eigen::Index i = 1; i < k; ++i) {
    if (solver.eigenvalues()(i).real() > solver.eigenvalues()(best).real()) best = i;
  }
  ::Eigen::VectorXd v = solver.eigenvectors().col(best).real();
  const double sum = v.sum();
  Eigen out;
  out.lambda = solver.eigenvalues()(best).real();
  for (::Eigen::Index i = 0; i < k; ++i) out.weights.push_back(v(i) / sum);
  return out;
}

std::vector<std::vector<double>> consistent_matrix(const std::vector<double>& w) {
  std::vector<std::vector<double>> rows(w.size(), std::vector<double>(w.size()));
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = 0; j < w.size(); ++j) rows[i][j] = i == j ? 1.0 : w[i] / w[j];
  }
  return rows;
}

std::vector<double> values(const std::vector<CatalogEntity>& entities,
                           const std::vector<Requirement>& reqs,
                           const std::vector<Criterion>& criteria, std::size_t level,
                           double epsilon) {
  std::vector<bool> alive(entities.size());
  for (std::size_t i = 0; i < entities.size(); ++i) alive[i] = failures(entities[i], reqs) <= level;
  std::vector<double> out(entities.size(), 0.0);
  for (const auto& c : criteria) {
    std::vector<double> transformed(entities.size(), 0.0);
    double total = 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < entities.size(); ++i) {
      if (!alive[i]) continue;
      const double v = entities[i].numerical.at(c.key);
      transformed[i] = c.influence == cloudpick::Influence::kPositive ? v : 1.0 / (v + epsilon);
      total += transformed[i];
      ++count;
    }
    for (std::size_t i = 0; i < entities.size(); ++i) {
      if (!alive[i]) continue;
      const double share = total > 0.0 ? transformed[i] / total : 1.0 / static_cast<double>(count);
      out[i] += c.weight * share;
    }
  }
  return out;
}

std::optional<Pick> best_pair(const std::vector<CatalogEntity>& images,
                              const std::vector<double>& image_values,
                              const std::vector<bool>& image_survived,
                              const std::vector<CatalogEntity>& services,
                              const std::vector<double>& service_values,
                              const std::vector<bool>& service_survived,
                              const std::vector<std::pair<std::string, std::string>>& d,
                              double w_a, double w_s, bool multiplicative) {
  const std::set<std::pair<std::string, std::string>> pairs(d.begin(), d.end());
  std::optional<Pick> best;
  for (std::size_t i = 0; i < images.size(); ++i) {
    for (std::size_t j = 0; j < services.size(); ++j) {
      const bool in_d = pairs.count({images[i].id, services[j].id}) > 0;
      if (!in_d || !image_survived[i] || !service_survived[j]) continue;
      const double v = multiplicative ? image_values[i] * service_values[j]
                                      : w_a * image_values[i] + w_s * service_values[j];
      const Pick candidate{images[i].id, services[j].id, v};
      if (!best || v > best->value ||
          (v == best->value && std::tie(candidate.image, candidate.service) <
                                   std::tie(best->image, best->service))) {
        best = candidate;
      }
    }
  }
  return best;
}

const std::vector<std::string>& languages() {
  static const std::vector<std::string> kLanguages = {"Java", "PHP", "Perl", "Ruby", "Python", "C#"};
  return kLanguages;
}

const std::vector<std::string>& operating_systems() {
  static const std::vector<std::string> kOs = {"Linux", "Windows"};
  return kOs;
}

namespace {

template <typename T>
const T& pick(std::mt19937_64& rng, const std::vector<T>& pool) {
  return pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
}

double draw(std::mt19937_64& rng, bool coarse, std::vector<double> grid, double lo, double hi) {
  if (coarse) return pick(rng, grid);
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::string padded(const char* prefix, std::size_t i) {
  std::string digits = std::to_string(i);
  while (digits.size() < 3) digits.insert(digits.begin(), '0');
  return prefix + digits;
}

}  // namespace

Catalog random_catalog(std::mt19937_64& rng, std::size_t m, std::size_t n,
                       const RandomCatalogOptions& options) {
  namespace attr = cloudpick::attr;
  const bool coarse = options.coarse;
  cloudpick::CatalogParts parts;
  parts.providers = {{"p1", "Amazon"}, {"p2", "Rackspace"}, {"p3", "GoGrid"}};
  const std::vector<std::string> providers = {"p1", "p2", "p3"};
  const std::vector<std::string> countries = {"Germany", "USA", "Ireland"};
  const std::vector<std::string> formats = {"Xen", "KVM", "AMI"};

  for (std::size_t i = 0; i < m; ++i) {
    CatalogEntity e;
    e.id = padded("img-", i);
    e.kind = EntityKind::kVmImage;
    e.provider_id = pick(rng, providers);
    e.numerical[std::string(attr::kHourlyLicensePrice)] =
        draw(rng, coarse, {0.01, 0.02, 0.05, 0.1, 0.5}, 0.001, 1.0);
    e.numerical[std::string(attr::kPopularity)] =
        draw(rng, coarse, {0, 10, 25, 50, 75, 90, 100}, 0.0, 100.0);
    const std::string os = pick(rng, operating_systems());
    e.non_numerical[std::string(attr::kOperatingSystem)] = os;
    e.non_numerical[std::string(attr::kOsVersion)] =
        std::string(os == "Linux" ? "Ubuntu 10.4" : "Server 2008");
    e.non_numerical[std::string(attr::kVirtualizationFormat)] = pick(rng, formats);
    const std::string lang = pick(rng, languages());
    e.non_numerical[std::string(attr::kImplementationLanguage)] = lang;
    std::vector<std::string> supported = {lang};
    for (const auto& l : languages()) {
      if (l != lang && std::bernoulli_distribution(0.3)(rng)) supported.push_back(l);
    }
    e.non_numerical[std::string(attr::kSupportedImplLanguages)] = supported;
    parts.images.push_back(std::move(e));
  }
  for (std::size_t j = 0; j < n; ++j) {
    CatalogEntity e;
    e.id = padded("svc-", j);
    e.kind = EntityKind::kInfraService;
    e.provider_id = pick(rng, providers);
    e.numerical[std::string(attr::kHourlyPrice)] =
        draw(rng, coarse, {0.05, 0.08, 0.1, 0.2, 0.4}, 0.01, 2.0);
    e.numerical[std::string(attr::kCpuPerformance)] = draw(rng, coarse, {1e9, 2e9, 4e9}, 1e8, 1e10);
    e.numerical[std::string(attr::kRamPerformance)] = draw(rng, coarse, {1e9, 2e9}, 1e8, 1e10);
    e.numerical[std::string(attr::kDiskPerformance)] = draw(rng, coarse, {1e8, 3e8}, 1e7, 1e9);
    e.numerical[std::string(attr::kMaxLatency)] = draw(rng, coarse, {100, 150, 200}, 10, 500);
    e.numerical[std::string(attr::kAvgLatency)] = draw(rng, coarse, {40, 60, 80}, 5, 200);
    e.numerical[std::string(attr::kUptime)] = draw(rng, coarse, {95, 99, 99.9, 99.99}, 90, 100);
    e.numerical[std::string(attr::kServicePopularity)] =
        draw(rng, coarse, {10, 50, 90}, 0, 100);
    e.non_numerical[std::string(attr::kProvider)] = pick(rng, std::vector<std::string>{
                                                                  "Amazon", "Rackspace", "GoGrid"});
    e.non_numerical[std::string(attr::kLocationCountry)] = pick(rng, countries);
    parts.services.push_back(std::move(e));
  }
  std::bernoulli_distribution in_d(options.density);
  for (const auto& a : parts.images) {
    for (const auto& s : parts.services) {
      if (in_d(rng)) parts.dependencies.emplace_back(a.id, s.id);
    }
  }
  return Catalog::create(std::move(parts));
}

std::vector<Requirement> random_requirements(std::mt19937_64& rng, std::size_t count) {
  namespace attr = cloudpick::attr;
  std::vector<Requirement> out;
  for (std::size_t r = 0; r < count; ++r) {
    Requirement req;
    switch (std::uniform_int_distribution<int>(0, 9)(rng)) {
      case 0:
        req = {EntityKind::kVmImage, std::string(attr::kPopularity),
               Min{pick(rng, std::vector<double>{0, 10, 25, 50, 75})}};
        break;
      case 1:
        req = {EntityKind::kVmImage, std::string(attr::kHourlyLicensePrice),
               Max{pick(rng, std::vector<double>{0.02, 0.05, 0.1, 0.5})}};
        break;
      case 2:
        req = {EntityKind::kVmImage, std::string(attr::kOperatingSystem),
               Equals{pick(rng, std::vector<std::string>{"Linux", " windows", "LINUX "})}};
        break;
      case 3: {
        OneOf one_of;
        for (const auto& l : languages()) {
          if (std::bernoulli_distribution(0.35)(rng)) one_of.values.push_back(l);
        }
        if (one_of.values.empty()) one_of.values.push_back("php");
        req = {EntityKind::kVmImage, std::string(attr::kSupportedImplLanguages), one_of};
        break;
      }
      case 4:
        req = {EntityKind::kVmImage, std::string(attr::kImplementationLanguage),
               OneOf{{pick(rng, languages()), pick(rng, languages())}}};
        break;
      case 5:
        req = {EntityKind::kInfraService, std::string(attr::kUptime),
               Min{pick(rng, std::vector<double>{95, 99, 99.9})}};
        break;
      case 6:
        req = {EntityKind::kInfraService, std::string(attr::kHourlyPrice),
               Max{pick(rng, std::vector<double>{0.08, 0.1, 0.2, 0.4})}};
        break;
      case 7:
        req = {EntityKind::kInfraService, std::string(attr::kAvgLatency),
               Max{pick(rng, std::vector<double>{50, 70, 90})}};
        break;
      case 8:
        req = {EntityKind::kInfraService, std::string(attr::kLocationCountry),
               OneOf{{pick(rng, std::vector<std::string>{"Germany", "usa", "Ireland"})}}};
        break;
      default:
        req = {EntityKind::kInfraService, std::string(attr::kProvider),
               Equals{pick(rng, std::vector<std::string>{"Amazon", "rackspace"})}};
        break;
    }
    out.push_back(std::move(req));
  }
  return out;
}

std::vector<Requirement> only(EntityKind kind, const std::vector<Requirement>& reqs) {
  std::vector<Requirement> out;
  for (const auto& r : reqs) {
    if (r.target_kind == kind) out.push_back(r);
  }
  return out;
}

}  // namespace oracle
