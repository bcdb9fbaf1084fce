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

#ifndef PQDECIDE_RELATIONAL_TABLE_H_
#define PQDECIDE_RELATIONAL_TABLE_H_

#include <cstdint>
#include <istream>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "pqdecide/relational/schema.h"

namespace pqdecide {

// Immutable bag of rows stored column-major. Categorical values are stored as
// their domain index. Every stored value is a member of its attribute domain.
class Table {
 public:
  static absl::StatusOr<Table> Create(std::shared_ptr<const Schema> schema,
                                      std::vector<std::vector<int64_t>> columns);

  const Schema& schema() const { return *schema_; }
  const std::shared_ptr<const Schema>& shared_schema() const { return schema_; }

  size_t num_rows() const { return num_rows_; }
  size_t num_columns() const { return columns_.size(); }

  std::span<const int64_t> column(size_t i) const { return columns_[i]; }
  int64_t value(size_t row, size_t col) const { return columns_[col][row]; }
  std::vector<int64_t> row(size_t r) const;

  // Neighbor construction helpers; both return new tables.
  absl::StatusOr<Table> WithRowAppended(std::span<const int64_t> row) const;
  Table WithRowRemoved(size_t r) const;

 private:
  friend class TableBuilder;

  Table(std::shared_ptr<const Schema> schema,
        std::vector<std::vector<int64_t>> columns, size_t num_rows)
      : schema_(std::move(schema)),
        columns_(std::move(columns)),
        num_rows_(num_rows) {}

  std::shared_ptr<const Schema> schema_;
  std::vector<std::vector<int64_t>> columns_;
  size_t num_rows_ = 0;
};

// Row-at-a-time construction with domain validation.
class TableBuilder {
 public:
  explicit TableBuilder(std::shared_ptr<const Schema> schema);

  absl::Status AddRow(std::span<const int64_t> row);
  size_t num_rows() const { return num_rows_; }
  Table Build() &&;

 private:
  std::shared_ptr<const Schema> schema_;
  std::vector<std::vector<int64_t>> columns_;
  size_t num_rows_ = 0;
};

// CSV with a header row naming every schema attribute (any order). Errors
// name the 1-based data row and the offending column.
absl::StatusOr<Table> LoadTableCsv(std::istream& in,
                                   std::shared_ptr<const Schema> schema);
absl::StatusOr<Table> LoadTableCsvFile(const std::string& path,
                                       std::shared_ptr<const Schema> schema);

// Header in schema order; categorical values written as labels.
std::string WriteTableCsv(const Table& table);

}  // namespace pqdecide

#endif  // PQDECIDE_RELATIONAL_TABLE_H_
