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

#include <fstream>
#include <iostream>
#include <sstream>

#include "cloudpick/catalog.hpp"
#include "json.hpp"

namespace cloudpick {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

// Collects decode problems. Decoding continues past an error whenever the
// rest of the document can still be interpreted.
class Decoder {
 public:
  explicit Decoder(std::vector<Error>& sink) : sink_(sink) {}

  void report(ErrorKind kind, std::string path, const std::string& message) {
    sink_.emplace_back(kind, std::move(path), message);
  }

  bool expect(const json& node, json::value_t type, const std::string& path,
              const char* what) {
    const bool ok = type == json::value_t::number_float
                        ? node.is_number()
                        : node.type() == type;
    if (!ok) report(ErrorKind::kSchema, path, std::string("expected ") + what);
    return ok;
  }

  void check_fields(const json& object, std::initializer_list<std::string_view> allowed,
                    const std::string& path) {
    for (const auto& [key, value] : object.items()) {
      bool known = false;
      for (auto a : allowed) known = known || key == a;
      if (!known) report(ErrorKind::kSchema, path + "/" + key, "unknown field '" + key + "'");
    }
  }

  std::string string_field(const json& object, const char* name, const std::string& path,
                           bool required = true) {
    auto it = object.find(name);
    if (it == object.end()) {
      if (required) report(ErrorKind::kSchema, path + "/" + name,
                           std::string("missing field '") + name + "'");
      return {};
    }
    if (!it->is_string()) {
      report(ErrorKind::kSchema, path + "/" + name, "expected a string");
      return {};
    }
    return it->get<std::string>();
  }

  std::vector<Provider> providers(const json& node) {
    std::vector<Provider> out;
    if (!expect(node, json::value_t::array, "/providers", "a list")) return out;
    for (std::size_t i = 0; i < node.size(); ++i) {
      const std::string path = "/providers/" + std::to_string(i);
      const json& p = node[i];
      if (!expect(p, json::value_t::object, path, "an object")) continue;
      check_fields(p, {"id", "name"}, path);
      Provider provider;
      provider.id = string_field(p, "id", path);
      provider.name = string_field(p, "name", path, false);
      out.push_back(std::move(provider));
    }
    return out;
  }

  void attribute_defs(const json& node, AttributeSchema& schema) {
    if (!expect(node, json::value_t::object, "/attribute_defs", "an object")) return;
    for (const auto& [kind_name, defs] : node.items()) {
      const std::string path = "/attribute_defs/" + kind_name;
      auto kind = parse_entity_kind(kind_name);
      if (!kind) {
        report(ErrorKind::kSchema, path, "unknown entity kind '" + kind_name + "'");
        continue;
      }
      if (!expect(defs, json::value_t::object, path, "an object")) continue;
      check_fields(defs, {"numerical", "non_numerical"}, path);
      if (auto it = defs.find("numerical"); it != defs.end()) {
        numerical_defs(*it, *kind, path + "/numerical", schema);
      }
      if (auto it = defs.find("non_numerical"); it != defs.end()) {
        non_numerical_defs(*it, *kind, path + "/non_numerical", schema);
      }
    }
  }

  void numerical_defs(const json& list, EntityKind kind, const std::string& base,
                      AttributeSchema& schema) {
    if (!expect(list, json::value_t::array, base, "a list")) return;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string path = base + "/" + std::to_string(i);
      const json& d = list[i];
      if (!expect(d, json::value_t::object, path, "an object")) continue;
      check_fields(d, {"key", "influence", "metric", "min", "max", "variability"}, path);
      NumericalAttributeDef def;
      def.key = string_field(d, "key", path);
      const std::string influence = string_field(d, "influence", path);
      if (influence == "positive") {
        def.influence = Influence::kPositive;
      } else if (influence == "negative") {
        def.influence = Influence::kNegative;
      } else if (!influence.empty()) {
        report(ErrorKind::kSchema, path + "/influence",
               "influence must be 'positive' or 'negative'");
        continue;
      }
      def.metric = string_field(d, "metric", path, false);
      if (auto it = d.find("min"); it != d.end()) {
        if (expect(*it, json::value_t::number_float, path + "/min", "a number")) {
          def.range.lower = it->get<double>();
        }
      }
      if (auto it = d.find("max"); it != d.end() && !it->is_null()) {
        if (expect(*it, json::value_t::number_float, path + "/max", "a number")) {
          def.range.upper = it->get<double>();
        }
      }
      def.variability = variability(d, path, Variability::kDynamic);
      if (def.key.empty()) continue;
      declare(schema, kind, std::move(def), path);
    }
  }

  void non_numerical_defs(const json& list, EntityKind kind, const std::string& base,
                          AttributeSchema& schema) {
    if (!expect(list, json::value_t::array, base, "a list")) return;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const std::string path = base + "/" + std::to_string(i);
      const json& d = list[i];
      if (!expect(d, json::value_t::object, path, "an object")) continue;
      check_fields(d, {"key", "examples", "set_valued", "optional", "variability"}, path);
      NonNumericalAttributeDef def;
      def.key = string_field(d, "key", path);
      if (auto it = d.find("examples"); it != d.end()) {
        def.allowed_examples = string_list(*it, path + "/examples");
      }
      def.set_valued = boolean(d, "set_valued", path);
      def.optional = boolean(d, "optional", path);
      def.variability = variability(d, path, Variability::kStatic);
      if (def.variability != Variability::kStatic) {
        report(ErrorKind::kSchema, path + "/variability",
               "non-numerical attributes are static");
      }
      if (def.key.empty()) continue;
      declare(schema, kind, std::move(def), path);
    }
  }

  template <typename Def>
  void declare(AttributeSchema& schema, EntityKind kind, Def def, const std::string& path) {
    const NumericalAttributeDef* num = schema.find_numerical(kind, def.key);
    const NonNumericalAttributeDef* text = schema.find_non_numerical(kind, def.key);
    if (num == nullptr && text == nullptr) {
      schema.add(kind, std::move(def));
      return;
    }
    // Re-declaring a known attribute is allowed only verbatim.
    bool same = false;
    if constexpr (std::is_same_v<Def, NumericalAttributeDef>) {
      same = num != nullptr && *num == def;
    } else {
      same = text != nullptr && *text == def;
    }
    if (!same) {
      report(ErrorKind::kSchema, path,
             "attribute '" + def.key + "' conflicts with an existing definition");
    }
  }

  Variability variability(const json& d, const std::string& path, Variability fallback) {
    auto it = d.find("variability");
    if (it == d.end()) return fallback;
    if (it->is_string() && *it == "static") return Variability::kStatic;
    if (it->is_string() && *it == "dynamic") return Variability::kDynamic;
    report(ErrorKind::kSchema, path + "/variability",
           "variability must be 'static' or 'dynamic'");
    return fallback;
  }

  bool boolean(const json& d, const char* name, const std::string& path) {
    auto it = d.find(name);
    if (it == d.end()) return false;
    if (!it->is_boolean()) {
      report(ErrorKind::kSchema, path + "/" + name, "expected true or false");
      return false;
    }
    return it->get<bool>();
  }

  std::vector<std::string> string_list(const json& node, const std::string& path) {
    std::vector<std::string> out;
    if (!expect(node, json::value_t::array, path, "a list of strings")) return out;
    for (std::size_t i = 0; i < node.size(); ++i) {
      if (!node[i].is_string()) {
        report(ErrorKind::kSchema, path + "/" + std::to_string(i), "expected a string");
        continue;
      }
      out.push_back(node[i].get<std::string>());
    }
    return out;
  }

  std::vector<CatalogEntity> entities(const json& node, EntityKind kind) {
    const std::string section = kind == EntityKind::kVmImage ? "images" : "services";
    std::vector<CatalogEntity> out;
    if (!expect(node, json::value_t::array, "/" + section, "a list")) return out;
    for (std::size_t i = 0; i < node.size(); ++i) {
      const std::string path = "/" + section + "/" + std::to_string(i);
      const json& e = node[i];
      if (!expect(e, json::value_t::object, path, "an object")) continue;
      check_fields(e, {"id", "provider", "numerical", "non_numerical"}, path);
      CatalogEntity entity;
      entity.kind = kind;
      entity.id = string_field(e, "id", path);
      entity.provider_id = string_field(e, "provider", path);
      if (auto it = e.find("numerical"); it != e.end()) {
        if (expect(*it, json::value_t::object, path + "/numerical", "an object")) {
          for (const auto& [key, value] : it->items()) {
            if (!value.is_number()) {
              report(ErrorKind::kSchema, path + "/numerical/" + key,
                     "entity '" + entity.id + "' attribute '" + key + "' must be a number");
              continue;
            }
            entity.numerical.emplace(key, value.get<double>());
          }
        }
      }
      if (auto it = e.find("non_numerical"); it != e.end()) {
        if (expect(*it, json::value_t::object, path + "/non_numerical", "an object")) {
          for (const auto& [key, value] : it->items()) {
            const std::string vpath = path + "/non_numerical/" + key;
            if (value.is_string()) {
              entity.non_numerical.emplace(key, value.get<std::string>());
            } else if (value.is_array()) {
              entity.non_numerical.emplace(key, string_list(value, vpath));
            } else {
              report(ErrorKind::kSchema, vpath,
                     "entity '" + entity.id + "' attribute '" + key +
                         "' must be a string or a list of strings");
            }
          }
        }
      }
      out.push_back(std::move(entity));
    }
    return out;
  }

  std::vector<DependencyPair> dependencies(const json& node) {
    std::vector<DependencyPair> out;
    if (!expect(node, json::value_t::array, "/dependencies", "a list")) return out;
    for (std::size_t i = 0; i < node.size(); ++i) {
      const std::string path = "/dependencies/" + std::to_string(i);
      const json& d = node[i];
      if (!expect(d, json::value_t::object, path, "an object")) continue;
      check_fields(d, {"image", "service"}, path);
      out.emplace_back(string_field(d, "image", path), string_field(d, "service", path));
    }
    return out;
  }

  CatalogParts document(const json& doc) {
    CatalogParts parts;
    if (!expect(doc, json::value_t::object, "", "a catalog object")) return parts;
    check_fields(doc, {"providers", "attribute_defs", "images", "services", "dependencies"},
                 "");
    for (const char* required : {"providers", "images", "services"}) {
      if (!doc.contains(required)) {
        report(ErrorKind::kSchema, std::string("/") + required,
               std::string("missing section '") + required + "'");
      }
    }
    if (auto it = doc.find("providers"); it != doc.end()) parts.providers = providers(*it);
    if (auto it = doc.find("attribute_defs"); it != doc.end()) {
      attribute_defs(*it, parts.schema);
    }
    if (auto it = doc.find("images"); it != doc.end()) {
      parts.images = entities(*it, EntityKind::kVmImage);
    }
    if (auto it = doc.find("services"); it != doc.end()) {
      parts.services = entities(*it, EntityKind::kInfraService);
    }
    if (auto it = doc.find("dependencies"); it != doc.end()) {
      parts.dependencies = dependencies(*it);
    }
    return parts;
  }

 private:
  std::vector<Error>& sink_;
};

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::kParse, "", e.what());
  }
}

ordered_json encode_defs(const AttributeSchema& schema, EntityKind kind) {
  ordered_json numerical = ordered_json::array();
  for (const auto& def : schema.numerical(kind)) {
    ordered_json d;
    d["key"] = def.key;
    d["influence"] = to_string(def.influence);
    d["metric"] = def.metric;
    d["min"] = def.range.lower;
    d["max"] = def.range.upper ? ordered_json(*def.range.upper) : ordered_json(nullptr);
    d["variability"] = to_string(def.variability);
    numerical.push_back(std::move(d));
  }
  ordered_json non_numerical = ordered_json::array();
  for (const auto& def : schema.non_numerical(kind)) {
    ordered_json d;
    d["key"] = def.key;
    d["examples"] = def.allowed_examples;
    d["set_valued"] = def.set_valued;
    d["optional"] = def.optional;
    d["variability"] = to_string(def.variability);
    non_numerical.push_back(std::move(d));
  }
  ordered_json out;
  out["numerical"] = std::move(numerical);
  out["non_numerical"] = std::move(non_numerical);
  return out;
}

ordered_json encode_entity(const CatalogEntity& e) {
  ordered_json out;
  out["id"] = e.id;
  out["provider"] = e.provider_id;
  ordered_json numerical = ordered_json::object();
  for (const auto& [key, value] : e.numerical) numerical[key] = value;
  out["numerical"] = std::move(numerical);
  ordered_json text = ordered_json::object();
  for (const auto& [key, value] : e.non_numerical) {
    std::visit([&](const auto& v) { text[key] = v; }, value);
  }
  out["non_numerical"] = std::move(text);
  return out;
}

}  // namespace

std::vector<Error> validate_catalog_text(std::string_view text) {
  std::vector<Error> errors;
  json doc;
  try {
    doc = parse_json(text);
  } catch (const Error& e) {
    errors.push_back(e);
    return errors;
  }
  Decoder decoder(errors);
  CatalogParts parts = decoder.document(doc);
  std::vector<Error> invariant_errors = validate(parts);
  errors.insert(errors.end(), invariant_errors.begin(), invariant_errors.end());
  return errors;
}

Catalog load_catalog_text(std::string_view text) {
  const json doc = parse_json(text);
  std::vector<Error> errors;
  Decoder decoder(errors);
  CatalogParts parts = decoder.document(doc);
  if (!errors.empty()) throw errors.front();
  return Catalog::create(std::move(parts));
}

Catalog load_catalog(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_catalog_text(buffer.str());
}

Catalog load_catalog_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, path, "cannot open catalog file");
  return load_catalog(in);
}

void save_catalog(const Catalog& catalog, std::ostream& out) {
  out << save_catalog_text(catalog);
}

std::string save_catalog_text(const Catalog& catalog) {
  ordered_json doc;
  ordered_json providers = ordered_json::array();
  for (const auto& p : catalog.providers()) {
    providers.push_back({{"id", p.id}, {"name", p.name}});
  }
  doc["providers"] = std::move(providers);

  ordered_json defs;
  defs["image"] = encode_defs(catalog.schema(), EntityKind::kVmImage);
  defs["service"] = encode_defs(catalog.schema(), EntityKind::kInfraService);
  doc["attribute_defs"] = std::move(defs);

  ordered_json images = ordered_json::array();
  for (const auto& e : catalog.images()) images.push_back(encode_entity(e));
  doc["images"] = std::move(images);
  ordered_json services = ordered_json::array();
  for (const auto& e : catalog.services()) services.push_back(encode_entity(e));
  doc["services"] = std::move(services);

  ordered_json deps = ordered_json::array();
  for (const auto& [image, service] : catalog.dependencies().pairs()) {
    deps.push_back({{"image", image}, {"service", service}});
  }
  doc["dependencies"] = std::move(deps);
  return doc.dump(2) + "\n";
}

}  // namespace cloudpick
