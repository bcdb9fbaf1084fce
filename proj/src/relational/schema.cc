// Copyright 2026 The pqdecide Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pqdecide/relational/schema.h"

#include <set>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "json.hpp"
#include "pqdecide/status_macros.h"

namespace pqdecide {

absl::StatusOr<AttributeDomain> AttributeDomain::Categorical(
    std::vector<std::string> values) {
  if (values.empty()) {
    return absl::InvalidArgumentError("categorical domain must be non-empty");
  }
  std::set<std::string_view> seen;
  for (const std::string& v : values) {
    if (!seen.insert(v).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate categorical value '", v, "'"));
    }
  }
  return AttributeDomain(CategoricalDomain{std::move(values)});
}

absl::StatusOr<AttributeDomain> AttributeDomain::Integer(int64_t min,
                                                         int64_t max) {
  if (min > max) {
    return absl::InvalidArgumentError(
        absl::StrCat("integer domain has min ", min, " > max ", max));
  }
  return AttributeDomain(IntegerRange{min, max});
}

std::optional<int64_t> AttributeDomain::CodeOf(std::string_view label) const {
  if (!is_categorical()) return std::nullopt;
  const auto& values = categorical().values;
  for (size_t i = 0; i < values.size(); ++i) {
    if (values[i] == label) return static_cast<int64_t>(i);
  }
  return std::nullopt;
}

bool AttributeDomain::ContainsCode(int64_t code) const {
  if (is_integer()) return integer().Contains(code);
  return code >= 0 &&
         code < static_cast<int64_t>(categorical().values.size());
}

absl::StatusOr<Schema> Schema::Create(std::vector<Attribute> attributes) {
  if (attributes.empty()) {
    return absl::InvalidArgumentError("schema has no attributes");
  }
  std::set<std::string_view> names;
  for (const Attribute& a : attributes) {
    if (a.name.empty()) {
      return absl::InvalidArgumentError("attribute name is empty");
    }
    if (!names.insert(a.name).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate attribute name '", a.name, "'"));
    }
  }
  return Schema(std::move(attributes));
}

std::optional<size_t> Schema::IndexOf(std::string_view name) const {
  for (size_t i = 0; i < attributes_.size(); ++i) {
    if (attributes_[i].name == name) return i;
  }
  return std::nullopt;
}

namespace {

absl::StatusOr<Attribute> ParseAttribute(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("name") || !j.contains("type")) {
    return absl::InvalidArgumentError(
        "each attribute needs 'name' and 'type' fields");
  }
  const std::string name = j.at("name").get<std::string>();
  const std::string type = j.at("type").get<std::string>();
  if (type == "integer") {
    if (!j.contains("min") || !j.contains("max")) {
      return absl::InvalidArgumentError(
          absl::StrCat("integer attribute '", name, "' needs min and max"));
    }
    ASSIGN_OR_RETURN(AttributeDomain d,
                     AttributeDomain::Integer(j.at("min").get<int64_t>(),
                                              j.at("max").get<int64_t>()));
    return Attribute{name, std::move(d)};
  }
  if (type == "categorical") {
    if (!j.contains("values") || !j.at("values").is_array()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "categorical attribute '", name, "' needs a 'values' array"));
    }
    ASSIGN_OR_RETURN(AttributeDomain d,
                     AttributeDomain::Categorical(
                         j.at("values").get<std::vector<std::string>>()));
    return Attribute{name, std::move(d)};
  }
  return absl::InvalidArgumentError(
      absl::StrCat("attribute '", name, "' has unknown type '", type, "'"));
}

}  // namespace

absl::StatusOr<Schema> ParseSchemaJson(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("schema is not valid JSON: ", e.what()));
  }
  if (!doc.is_object() || !doc.contains("attributes") ||
      !doc.at("attributes").is_array()) {
    return absl::InvalidArgumentError(
        "schema document needs an 'attributes' array");
  }
  std::vector<Attribute> attributes;
  try {
    for (const auto& a : doc.at("attributes")) {
      ASSIGN_OR_RETURN(Attribute attr, ParseAttribute(a));
      attributes.push_back(std::move(attr));
    }
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed schema attribute: ", e.what()));
  }
  return Schema::Create(std::move(attributes));
}

std::string SchemaToJson(const Schema& schema) {
  nlohmann::json attrs = nlohmann::json::array();
  for (const Attribute& a : schema.attributes()) {
    if (a.domain.is_integer()) {
      attrs.push_back({{"name", a.name},
                       {"type", "integer"},
                       {"min", a.domain.integer().min},
                       {"max", a.domain.integer().max}});
    } else {
      attrs.push_back({{"name", a.name},
                       {"type", "categorical"},
                       {"values", a.domain.categorical().values}});
    }
  }
  return nlohmann::json{{"attributes", attrs}}.dump(2);
}

}  // namespace pqdecide
