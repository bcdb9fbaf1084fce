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

#ifndef PQDECIDE_RELATIONAL_SCHEMA_H_
#define PQDECIDE_RELATIONAL_SCHEMA_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"

namespace pqdecide {

// Ordered list of distinct labels. Values are stored in tables as the label's
// index in this list.
struct CategoricalDomain {
  std::vector<std::string> values;
};

// Inclusive integer range [min, max].
struct IntegerRange {
  int64_t min = 0;
  int64_t max = 0;

  int64_t size() const { return max - min + 1; }
  bool Contains(int64_t v) const { return v >= min && v <= max; }
};

class AttributeDomain {
 public:
  static absl::StatusOr<AttributeDomain> Categorical(
      std::vector<std::string> values);
  static absl::StatusOr<AttributeDomain> Integer(int64_t min, int64_t max);

  bool is_categorical() const {
    return std::holds_alternative<CategoricalDomain>(domain_);
  }
  bool is_integer() const {
    return std::holds_alternative<IntegerRange>(domain_);
  }

  const CategoricalDomain& categorical() const {
    return std::get<CategoricalDomain>(domain_);
  }
  const IntegerRange& integer() const { return std::get<IntegerRange>(domain_); }

  // Index of `label` in a categorical domain, if present.
  std::optional<int64_t> CodeOf(std::string_view label) const;

  // Whether the stored (encoded) value is a member of the domain.
  bool ContainsCode(int64_t code) const;

 private:
  explicit AttributeDomain(std::variant<CategoricalDomain, IntegerRange> d)
      : domain_(std::move(d)) {}

  std::variant<CategoricalDomain, IntegerRange> domain_;
};

struct Attribute {
  std::string name;
  AttributeDomain domain;
};

class Schema {
 public:
  // Fails if attribute names repeat or the list is empty.
  static absl::StatusOr<Schema> Create(std::vector<Attribute> attributes);

  size_t size() const { return attributes_.size(); }
  const Attribute& attribute(size_t i) const { return attributes_[i]; }
  const std::vector<Attribute>& attributes() const { return attributes_; }

  std::optional<size_t> IndexOf(std::string_view name) const;

 private:
  explicit Schema(std::vector<Attribute> attributes)
      : attributes_(std::move(attributes)) {}

  std::vector<Attribute> attributes_;
};

// Parses the JSON schema document described in docs/formats.md.
absl::StatusOr<Schema> ParseSchemaJson(std::string_view json_text);
std::string SchemaToJson(const Schema& schema);

}  // namespace pqdecide

#endif  // PQDECIDE_RELATIONAL_SCHEMA_H_
