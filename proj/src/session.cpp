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

#include "cloudpick/session.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdint>
#include <ctime>
#include <fstream>
#include <sstream>

namespace cloudpick {

using nlohmann::json;
using nlohmann::ordered_json;

std::string_view to_string(Mode mode) {
  return mode == Mode::kTwoPhase ? "two-phase" : "integrated";
}

std::optional<Mode> parse_mode(std::string_view text) {
  if (text == "two-phase" || text == "two_phase") return Mode::kTwoPhase;
  if (text == "integrated") return Mode::kIntegrated;
  return std::nullopt;
}

std::optional<RelaxationPolicy> RelaxationPolicy::parse(std::string_view text) {
  if (text == "auto" || text == "auto-minimal") return RelaxationPolicy{};
  std::size_t level = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), level);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) return std::nullopt;
  return fixed(level);
}

std::vector<Requirement> SessionDocument::requirements_for(EntityKind kind) const {
  std::vector<Requirement> out;
  for (const auto& r : requirements) {
    if (r.target_kind == kind) out.push_back(r);
  }
  return out;
}

namespace {

[[noreturn]] void fail(ErrorKind kind, const std::string& path, const std::string& message) {
  throw Error(kind, path, message);
}

void check_fields(const json& object, std::initializer_list<std::string_view> allowed,
                  const std::string& path) {
  for (const auto& [key, value] : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      fail(ErrorKind::kSchema, path + "/" + key, "unknown field '" + key + "'");
    }
  }
}

const json& require(const json& object, const char* name, const std::string& path) {
  auto it = object.find(name);
  if (it == object.end()) fail(ErrorKind::kSchema, path + "/" + name,
                               std::string("missing field '") + name + "'");
  return *it;
}

std::string as_string(const json& node, const std::string& path) {
  if (!node.is_string()) fail(ErrorKind::kSchema, path, "expected a string");
  return node.get<std::string>();
}

double as_number(const json& node, const std::string& path) {
  if (!node.is_number()) fail(ErrorKind::kSchema, path, "expected a number");
  return node.get<double>();
}

std::size_t as_index(const json& node, const std::string& path) {
  if (!node.is_number_integer() || node.get<std::int64_t>() < 0) {
    fail(ErrorKind::kSchema, path, "expected a non-negative integer");
  }
  return node.get<std::size_t>();
}

EntityKind as_kind(const json& node, const std::string& path) {
  auto kind = parse_entity_kind(as_string(node, path));
  if (!kind) fail(ErrorKind::kSchema, path, "kind must be 'image' or 'service'");
  return *kind;
}

Requirement parse_requirement(const json& node, const std::string& path) {
  if (!node.is_object()) fail(ErrorKind::kSchema, path, "expected a requirement object");
  check_fields(node, {"kind", "attribute", "predicate", "value", "values"}, path);
  Requirement req;
  req.target_kind = as_kind(require(node, "kind", path), path + "/kind");
  req.attribute_key = as_string(require(node, "attribute", path), path + "/attribute");
  std::string predicate = normalize_text(as_string(require(node, "predicate", path),
                                                   path + "/predicate"));
  if (predicate == "max") {
    req.predicate = Max{as_number(require(node, "value", path), path + "/value")};
  } else if (predicate == "min") {
    req.predicate = Min{as_number(require(node, "value", path), path + "/value")};
  } else if (predicate == "equals") {
    req.predicate = Equals{as_string(require(node, "value", path), path + "/value")};
  } else if (predicate == "one_of" || predicate == "oneof") {
    const json& values = require(node, "values", path);
    if (!values.is_array()) fail(ErrorKind::kSchema, path + "/values", "expected a list");
    OneOf one_of;
    for (std::size_t i = 0; i < values.size(); ++i) {
      one_of.values.push_back(as_string(values[i], path + "/values/" + std::to_string(i)));
    }
    if (one_of.values.empty()) {
      fail(ErrorKind::kInvalidArgument, path + "/values", "OneOf needs at least one value");
    }
    req.predicate = std::move(one_of);
  } else {
    fail(ErrorKind::kSchema, path + "/predicate",
         "predicate must be one of max, min, equals, one_of");
  }
  return req;
}

json requirement_to_json(const Requirement& req) {
  json out;
  out["kind"] = to_string(req.target_kind);
  out["attribute"] = req.attribute_key;
  if (const auto* p = std::get_if<Max>(&req.predicate)) {
    out["predicate"] = "max";
    out["value"] = p->bound;
  } else if (const auto* p = std::get_if<Min>(&req.predicate)) {
    out["predicate"] = "min";
    out["value"] = p->bound;
  } else if (const auto* p = std::get_if<Equals>(&req.predicate)) {
    out["predicate"] = "equals";
    out["value"] = p->value;
  } else if (const auto* p = std::get_if<OneOf>(&req.predicate)) {
    out["predicate"] = "one_of";
    out["values"] = p->values;
  }
  return out;
}

std::vector<Requirement> parse_requirements(const json& node, const std::string& path,
                                            std::size_t first_index = 0) {
  if (!node.is_array()) fail(ErrorKind::kSchema, path, "expected a list of requirements");
  std::vector<Requirement> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    out.push_back(parse_requirement(node[i], path + "/" + std::to_string(first_index + i)));
  }
  return out;
}

GoalNode parse_node(const json& node, const std::string& path,
                    std::optional<EntityKind> default_kind) {
  if (!node.is_object()) fail(ErrorKind::kSchema, path, "expected a hierarchy node");
  check_fields(node, {"name", "attribute", "kind", "children", "judgments"}, path);
  std::string name;
  if (auto it = node.find("name"); it != node.end()) name = as_string(*it, path + "/name");

  if (auto it = node.find("attribute"); it != node.end()) {
    if (node.contains("children") || node.contains("judgments")) {
      fail(ErrorKind::kSchema, path, "a criterion leaf cannot have children or judgments");
    }
    std::optional<EntityKind> kind = default_kind;
    if (auto k = node.find("kind"); k != node.end()) kind = as_kind(*k, path + "/kind");
    if (!kind) fail(ErrorKind::kSchema, path + "/kind", "leaf needs a kind in this hierarchy");
    std::string key = as_string(*it, path + "/attribute");
    if (name.empty()) name = key;
    return GoalNode::leaf(std::move(name), *kind, key);
  }

  const json& children = require(node, "children", path);
  if (!children.is_array() || children.empty()) {
    fail(ErrorKind::kSchema, path + "/children", "expected a non-empty list of child nodes");
  }
  std::vector<GoalNode> kids;
  for (std::size_t i = 0; i < children.size(); ++i) {
    kids.push_back(parse_node(children[i], path + "/children/" + std::to_string(i), default_kind));
  }
  std::vector<ahp::Judgment> judgments;
  if (auto it = node.find("judgments"); it != node.end()) {
    if (!it->is_array()) fail(ErrorKind::kSchema, path + "/judgments", "expected a list");
    for (std::size_t n = 0; n < it->size(); ++n) {
      const std::string jpath = path + "/judgments/" + std::to_string(n);
      const json& jd = (*it)[n];
      if (!jd.is_object()) fail(ErrorKind::kSchema, jpath, "expected {i, j, ratio}");
      check_fields(jd, {"i", "j", "ratio"}, jpath);
      judgments.push_back({as_index(require(jd, "i", jpath), jpath + "/i"),
                           as_index(require(jd, "j", jpath), jpath + "/j"),
                           as_number(require(jd, "ratio", jpath), jpath + "/ratio")});
    }
  }
  try {
    auto matrix = ahp::PairwiseMatrix::from_judgments(kids.size(), judgments);
    return GoalNode::goal(std::move(name), std::move(kids), std::move(matrix));
  } catch (const Error& e) {
    throw Error(e.kind(), path + "/judgments", e.detail());
  }
}

GoalHierarchy parse_hierarchy(const json& node, const std::string& path,
                              std::optional<EntityKind> default_kind) {
  GoalNode root = parse_node(node, path, default_kind);
  try {
    return GoalHierarchy(std::move(root));
  } catch (const Error& e) {
    throw Error(e.kind(), path + e.path(), e.detail());
  }
}

json node_to_json(const GoalNode& node) {
  json out;
  out["name"] = node.name;
  if (node.is_leaf()) {
    out["kind"] = to_string(node.criterion->kind);
    out["attribute"] = node.criterion->key;
    return out;
  }
  json judgments = json::array();
  for (const auto& jd : node.comparison.upper_triangle()) {
    judgments.push_back({{"i", jd.i}, {"j", jd.j}, {"ratio", jd.ratio}});
  }
  out["judgments"] = std::move(judgments);
  json children = json::array();
  for (const auto& child : node.children) children.push_back(node_to_json(child));
  out["children"] = std::move(children);
  return out;
}

CombinationWeights parse_combination(const json& node, const CombinationWeights& base,
                                     const std::string& path) {
  if (!node.is_object()) fail(ErrorKind::kSchema, path, "expected an object");
  check_fields(node, {"w_a", "w_s", "combiner"}, path);
  CombinationWeights out = base;
  if (auto it = node.find("w_a"); it != node.end()) out.w_a = as_number(*it, path + "/w_a");
  if (auto it = node.find("w_s"); it != node.end()) out.w_s = as_number(*it, path + "/w_s");
  if (auto it = node.find("combiner"); it != node.end()) {
    auto combiner = parse_combiner(as_string(*it, path + "/combiner"));
    if (!combiner) {
      fail(ErrorKind::kSchema, path + "/combiner", "combiner must be additive or multiplicative");
    }
    out.combiner = *combiner;
  }
  return out;
}

RelaxationPolicy parse_relaxation(const json& node, const std::string& path) {
  if (node.is_number_integer() && node.get<std::int64_t>() >= 0) return RelaxationPolicy::fixed(node.get<std::size_t>());
  if (node.is_string()) {
    if (auto policy = RelaxationPolicy::parse(node.get<std::string>())) return *policy;
  }
  fail(ErrorKind::kSchema, path, "relaxation must be \"auto\" or a non-negative integer");
}

std::set<CriterionRef> parse_deselected(const json& node, const std::string& path) {
  if (!node.is_array()) fail(ErrorKind::kSchema, path, "expected a list");
  std::set<CriterionRef> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    const std::string p = path + "/" + std::to_string(i);
    if (!node[i].is_object()) fail(ErrorKind::kSchema, p, "expected {kind, attribute}");
    check_fields(node[i], {"kind", "attribute"}, p);
    out.insert({as_kind(require(node[i], "kind", p), p + "/kind"),
                as_string(require(node[i], "attribute", p), p + "/attribute")});
  }
  return out;
}

void apply_hierarchies(SessionDocument& s, const json& node, const std::string& path) {
  if (!node.is_object()) fail(ErrorKind::kSchema, path, "expected an object");
  check_fields(node, {"images", "services", "integrated"}, path);
  if (auto it = node.find("images"); it != node.end()) {
    s.image_hierarchy = parse_hierarchy(*it, path + "/images", EntityKind::kVmImage);
  }
  if (auto it = node.find("services"); it != node.end()) {
    s.service_hierarchy = parse_hierarchy(*it, path + "/services", EntityKind::kInfraService);
  }
  if (auto it = node.find("integrated"); it != node.end()) {
    if (it->is_null()) {
      s.integrated_hierarchy.reset();
    } else {
      s.integrated_hierarchy = parse_hierarchy(*it, path + "/integrated", std::nullopt);
    }
  }
}

// Shared by parse_session and apply_patch; `patch` enables the incremental keys.
void apply_fields(SessionDocument& s, const json& doc, bool patch) {
  if (!doc.is_object()) fail(ErrorKind::kSchema, "", "expected a session object");
  if (patch) {
    check_fields(doc, {"requirements", "add_requirements", "remove_requirements", "hierarchies",
                       "deselected", "combination", "relaxation", "mode"},
                 "");
  } else {
    check_fields(doc, {"catalog", "requirements", "hierarchies", "deselected", "combination",
                       "relaxation", "mode"},
                 "");
    if (auto it = doc.find("catalog"); it != doc.end()) s.catalog = as_string(*it, "/catalog");
  }
  if (auto it = doc.find("requirements"); it != doc.end()) {
    s.requirements = parse_requirements(*it, "/requirements");
  }
  if (patch) {
    if (auto it = doc.find("remove_requirements"); it != doc.end()) {
      if (!it->is_array()) fail(ErrorKind::kSchema, "/remove_requirements", "expected a list");
      std::vector<std::size_t> drop;
      for (std::size_t i = 0; i < it->size(); ++i) {
        const std::string p = "/remove_requirements/" + std::to_string(i);
        std::size_t index = as_index((*it)[i], p);
        if (index >= s.requirements.size()) {
          fail(ErrorKind::kInvalidArgument, p,
               "no requirement with index " + std::to_string(index));
        }
        drop.push_back(index);
      }
      std::sort(drop.rbegin(), drop.rend());
      drop.erase(std::unique(drop.begin(), drop.end()), drop.end());
      for (std::size_t index : drop) {
        s.requirements.erase(s.requirements.begin() + static_cast<std::ptrdiff_t>(index));
      }
    }
    if (auto it = doc.find("add_requirements"); it != doc.end()) {
      auto added = parse_requirements(*it, "/add_requirements");
      s.requirements.insert(s.requirements.end(), added.begin(), added.end());
    }
  }
  if (auto it = doc.find("hierarchies"); it != doc.end()) apply_hierarchies(s, *it, "/hierarchies");
  if (auto it = doc.find("deselected"); it != doc.end()) {
    s.deselected = parse_deselected(*it, "/deselected");
  }
  if (auto it = doc.find("combination"); it != doc.end()) {
    s.combination = parse_combination(*it, s.combination, "/combination");
  }
  if (auto it = doc.find("relaxation"); it != doc.end()) {
    s.relaxation = parse_relaxation(*it, "/relaxation");
  }
  if (auto it = doc.find("mode"); it != doc.end()) {
    auto mode = parse_mode(as_string(*it, "/mode"));
    if (!mode) fail(ErrorKind::kSchema, "/mode", "mode must be two-phase or integrated");
    s.mode = *mode;
  }
}

}  // namespace

SessionDocument parse_session(const json& doc) {
  SessionDocument s;
  apply_fields(s, doc, false);
  try {
    s.combination.validate();
  } catch (const Error& e) {
    throw Error(e.kind(), "/combination", e.detail());
  }
  return s;
}

SessionDocument parse_session_text(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParse, "", e.what());
  }
  return parse_session(doc);
}

SessionDocument load_session_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, path, "cannot open session file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_session_text(buffer.str());
}

json session_to_json(const SessionDocument& s) {
  json out;
  out["catalog"] = s.catalog;
  json reqs = json::array();
  for (const auto& r : s.requirements) reqs.push_back(requirement_to_json(r));
  out["requirements"] = std::move(reqs);
  json hierarchies;
  hierarchies["images"] = node_to_json(s.image_hierarchy.root());
  hierarchies["services"] = node_to_json(s.service_hierarchy.root());
  hierarchies["integrated"] =
      s.integrated_hierarchy ? node_to_json(s.integrated_hierarchy->root()) : json(nullptr);
  out["hierarchies"] = std::move(hierarchies);
  json deselected = json::array();
  for (const auto& c : s.deselected) {
    deselected.push_back({{"kind", to_string(c.kind)}, {"attribute", c.key}});
  }
  out["deselected"] = std::move(deselected);
  out["combination"] = {{"w_a", s.combination.w_a},
                        {"w_s", s.combination.w_s},
                        {"combiner", to_string(s.combination.combiner)}};
  out["relaxation"] = s.relaxation.automatic ? json("auto") : json(s.relaxation.level);
  out["mode"] = to_string(s.mode);
  return out;
}

SessionDocument apply_patch(const SessionDocument& session, const json& patch) {
  SessionDocument s = session;
  apply_fields(s, patch, true);
  return s;
}

namespace {

void validate_hierarchy(const GoalHierarchy& h, std::optional<EntityKind> kind,
                        const AttributeSchema& schema, const std::string& path) {
  for (const auto& c : h.leaves()) {
    if (kind && c.kind != *kind) {
      throw Error(ErrorKind::kKindMismatch, path,
                  "criterion '" + c.qualified() + "' does not belong in the " +
                      std::string(to_string(*kind)) + " hierarchy");
    }
  }
  try {
    h.validate_against(schema);
  } catch (const Error& e) {
    throw Error(e.kind(), path, e.detail());
  }
}

GoalHierarchy effective(const GoalHierarchy& h, const std::set<CriterionRef>& deselected,
                        const std::string& path) {
  try {
    return h.without(deselected);
  } catch (const Error& e) {
    throw Error(e.kind(), path, e.detail());
  }
}

GoalHierarchy effective_integrated(const SessionDocument& s) {
  if (s.integrated_hierarchy) {
    return effective(*s.integrated_hierarchy, s.deselected, "/hierarchies/integrated");
  }
  try {
    return integrated_hierarchy(effective(s.image_hierarchy, s.deselected, "/hierarchies/images"),
                                effective(s.service_hierarchy, s.deselected,
                                          "/hierarchies/services"),
                                s.combination.w_a, s.combination.w_s);
  } catch (const Error& e) {
    throw Error(e.kind(), e.path().empty() ? "/combination" : e.path(), e.detail());
  }
}

}  // namespace

void validate_session(const SessionDocument& s, const Catalog& catalog) {
  const AttributeSchema& schema = catalog.schema();
  for (std::size_t i = 0; i < s.requirements.size(); ++i) {
    try {
      validate_requirement(s.requirements[i], schema);
    } catch (const Error& e) {
      throw Error(e.kind(), "/requirements/" + std::to_string(i), e.detail());
    }
  }
  s.combination.validate();
  std::size_t d = 0;
  for (const auto& c : s.deselected) {
    if (schema.find_numerical(c.kind, c.key) == nullptr) {
      throw Error(ErrorKind::kSchema, "/deselected/" + std::to_string(d),
                  "'" + c.qualified() + "' is not a numerical attribute");
    }
    ++d;
  }
  validate_hierarchy(s.image_hierarchy, EntityKind::kVmImage, schema, "/hierarchies/images");
  validate_hierarchy(s.service_hierarchy, EntityKind::kInfraService, schema,
                     "/hierarchies/services");
  if (s.mode == Mode::kTwoPhase) {
    effective(s.image_hierarchy, s.deselected, "/hierarchies/images");
    effective(s.service_hierarchy, s.deselected, "/hierarchies/services");
  } else {
    validate_hierarchy(effective_integrated(s), std::nullopt, schema, "/hierarchies/integrated");
  }
}

ResultSet run_session(const Catalog& catalog, const SessionDocument& s,
                      const EvaluationOptions& options) {
  validate_session(s, catalog);
  if (catalog.images().empty() || catalog.services().empty()) {
    throw Error(ErrorKind::kInvalidArgument, "/catalog",
                "catalog needs at least one image and one service");
  }

  ResultSet out;
  out.mode = s.mode;
  out.policy = s.relaxation;
  out.combination = s.combination;
  for (const auto& r : s.requirements) out.requirements.push_back(describe(r));

  const auto image_reqs = s.requirements_for(EntityKind::kVmImage);
  const auto service_reqs = s.requirements_for(EntityKind::kInfraService);
  const AttributeSchema& schema = catalog.schema();

  const auto add_warnings = [&](const char* label, const GlobalWeights& gw) {
    for (const auto& w : gw.warnings) out.warnings.push_back({label, w});
  };

  if (s.mode == Mode::kTwoPhase) {
    const GlobalWeights image_w =
        effective(s.image_hierarchy, s.deselected, "/hierarchies/images").global_weights();
    const GlobalWeights service_w =
        effective(s.service_hierarchy, s.deselected, "/hierarchies/services").global_weights();
    add_warnings("images", image_w);
    add_warnings("services", service_w);
    out.image_weights = image_w.weights;
    out.service_weights = service_w.weights;

    out.image_relaxation = s.relaxation.automatic
                               ? minimal_relaxation(catalog.images(), image_reqs, schema)
                               : s.relaxation.level;
    out.service_relaxation = s.relaxation.automatic
                                 ? minimal_relaxation(catalog.services(), service_reqs, schema)
                                 : s.relaxation.level;
    out.images = evaluate_entities(catalog.images(), EntityKind::kVmImage, image_reqs, schema,
                                   out.image_weights, out.image_relaxation, options);
    out.services = evaluate_entities(catalog.services(), EntityKind::kInfraService, service_reqs,
                                     schema, out.service_weights, out.service_relaxation, options);
    out.combinations =
        combine(out.images, out.services, catalog.dependencies(), s.combination, options);
  } else {
    const GlobalWeights gw = effective_integrated(s).global_weights();
    add_warnings("integrated", gw);
    out.integrated_weights = gw.weights;
    out.pair_relaxation = s.relaxation.automatic
                              ? minimal_integrated_relaxation(catalog, image_reqs, service_reqs)
                              : s.relaxation.level;
    out.combinations = evaluate_integrated(catalog, image_reqs, service_reqs,
                                           out.integrated_weights, out.pair_relaxation, options);
  }
  out.best = best_combination(out.combinations);
  return out;
}

namespace {

ordered_json weights_to_json(const WeightVector& w, bool qualified) {
  ordered_json out = ordered_json::object();
  for (const auto& [c, value] : w.entries()) out[qualified ? c.qualified() : c.key] = value;
  return out;
}

ordered_json pair_to_json(const CombinedSolution& c) {
  ordered_json row;
  row["rank"] = c.rank;
  row["image"] = c.image_id;
  row["service"] = c.service_id;
  row["value"] = c.combined_value;
  row["image_value"] = c.image_value;
  row["service_value"] = c.service_value;
  row["failure_count"] = c.failure_count;
  row["feasible"] = c.feasible;
  row["eligible"] = c.eligible;
  return row;
}

ordered_json entity_rows(const std::vector<EvaluationResult>& results) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : results) {
    ordered_json row;
    row["rank"] = r.rank;
    row["id"] = r.entity_id;
    row["value"] = r.value;
    row["failure_count"] = r.failure_count();
    row["failed"] = r.failed;
    row["survived"] = r.survived;
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

ordered_json result_to_json(const ResultSet& r, const ResultJsonOptions& options) {
  ordered_json doc;
  doc["mode"] = to_string(r.mode);
  doc["outcome"] = r.feasible() ? "ok" : "no_feasible_combination";

  ordered_json relaxation;
  relaxation["policy"] = r.policy.automatic ? "auto" : "fixed";
  if (r.mode == Mode::kTwoPhase) {
    relaxation["images"] = r.image_relaxation;
    relaxation["services"] = r.service_relaxation;
  } else {
    relaxation["pairs"] = r.pair_relaxation;
  }
  doc["relaxation"] = std::move(relaxation);
  doc["requirements"] = r.requirements;

  ordered_json weights;
  if (r.mode == Mode::kTwoPhase) {
    weights["images"] = weights_to_json(r.image_weights, false);
    weights["services"] = weights_to_json(r.service_weights, false);
  } else {
    weights["integrated"] = weights_to_json(r.integrated_weights, true);
  }
  weights["combination"] = {{"w_a", r.combination.w_a},
                            {"w_s", r.combination.w_s},
                            {"combiner", to_string(r.combination.combiner)}};
  doc["weights"] = std::move(weights);

  ordered_json warnings = ordered_json::array();
  for (const auto& w : r.warnings) {
    warnings.push_back({{"hierarchy", w.hierarchy},
                        {"node", w.warning.node},
                        {"consistency_ratio", w.warning.consistency_ratio}});
  }
  doc["warnings"] = std::move(warnings);
  doc["best"] = r.best ? pair_to_json(*r.best) : ordered_json(nullptr);
  doc["images"] = entity_rows(r.images);
  doc["services"] = entity_rows(r.services);
  doc["combinations_total"] = r.combinations.size();
  ordered_json combos = ordered_json::array();
  const std::size_t limit = std::min(r.combinations.size(),
                                     options.max_combinations.value_or(r.combinations.size()));
  for (std::size_t i = 0; i < limit; ++i) combos.push_back(pair_to_json(r.combinations[i]));
  doc["combinations"] = std::move(combos);
  if (!options.timestamp.empty()) doc["generated_at"] = options.timestamp;
  return doc;
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

}  // namespace cloudpick
