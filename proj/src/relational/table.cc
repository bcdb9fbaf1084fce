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

#include "pqdecide/relational/table.h"

#include <charconv>
#include <fstream>
#include <optional>

#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "pqdecide/status_macros.h"

namespace pqdecide {

absl::StatusOr<Table> Table::Create(std::shared_ptr<const Schema> schema,
                                    std::vector<std::vector<int64_t>> columns) {
  if (columns.size() != schema->size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected ", schema->size(), " columns, got ",
                     columns.size()));
  }
  const size_t n = columns.front().size();
  for (size_t c = 0; c < columns.size(); ++c) {
    if (columns[c].size() != n) {
      return absl::InvalidArgumentError("columns have different lengths");
    }
    const AttributeDomain& dom = schema->attribute(c).domain;
    for (size_t r = 0; r < n; ++r) {
      if (!dom.ContainsCode(columns[c][r])) {
        return absl::InvalidArgumentError(
            absl::StrCat("row ", r + 1, ", column '",
                         schema->attribute(c).name, "': value ", columns[c][r],
                         " outside domain"));
      }
    }
  }
  return Table(std::move(schema), std::move(columns), n);
}

std::vector<int64_t> Table::row(size_t r) const {
  std::vector<int64_t> out(columns_.size());
  for (size_t c = 0; c < columns_.size(); ++c) out[c] = columns_[c][r];
  return out;
}

absl::StatusOr<Table> Table::WithRowAppended(
    std::span<const int64_t> row) const {
  std::vector<std::vector<int64_t>> cols = columns_;
  if (row.size() != cols.size()) {
    return absl::InvalidArgumentError("row width does not match schema");
  }
  for (size_t c = 0; c < cols.size(); ++c) cols[c].push_back(row[c]);
  return Create(schema_, std::move(cols));
}

Table Table::WithRowRemoved(size_t r) const {
  std::vector<std::vector<int64_t>> cols = columns_;
  for (auto& col : cols) col.erase(col.begin() + static_cast<ptrdiff_t>(r));
  return Table(schema_, std::move(cols), num_rows_ - 1);
}

TableBuilder::TableBuilder(std::shared_ptr<const Schema> schema)
    : schema_(std::move(schema)), columns_(schema_->size()) {}

absl::Status TableBuilder::AddRow(std::span<const int64_t> row) {
  if (row.size() != columns_.size()) {
    return absl::InvalidArgumentError("row width does not match schema");
  }
  for (size_t c = 0; c < row.size(); ++c) {
    if (!schema_->attribute(c).domain.ContainsCode(row[c])) {
      return absl::InvalidArgumentError(
          absl::StrCat("row ", num_rows_ + 1, ", column '",
                       schema_->attribute(c).name, "': value ", row[c],
                       " outside domain"));
    }
  }
  for (size_t c = 0; c < row.size(); ++c) columns_[c].push_back(row[c]);
  ++num_rows_;
  return absl::OkStatus();
}

Table TableBuilder::Build() && {
  return Table(std::move(schema_), std::move(columns_), num_rows_);
}

namespace {

// Splits one CSV record. Supports double-quoted fields with "" escapes; a
// quoted field may not span lines.
absl::StatusOr<std::vector<std::string>> SplitCsvLine(std::string_view line) {
  std::vector<std::string> fields;
  std::string cur;
  bool in_quotes = false;
  bool was_quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        cur.push_back(ch);
      }
    } else if (ch == '"' && cur.empty() && !was_quoted) {
      in_quotes = true;
      was_quoted = true;
    } else if (ch == ',') {
      fields.push_back(was_quoted ? cur : std::string(absl::StripAsciiWhitespace(cur)));
      cur.clear();
      was_quoted = false;
    } else {
      cur.push_back(ch);
    }
  }
  if (in_quotes) return absl::InvalidArgumentError("unterminated quoted field");
  fields.push_back(was_quoted ? cur : std::string(absl::StripAsciiWhitespace(cur)));
  return fields;
}

absl::StatusOr<int64_t> ParseCell(const AttributeDomain& dom,
                                  const std::string& cell) {
  if (dom.is_categorical()) {
    std::optional<int64_t> code = dom.CodeOf(cell);
    if (!code) {
      return absl::InvalidArgumentError(
          absl::StrCat("'", cell, "' is not in the categorical domain"));
    }
    return *code;
  }
  int64_t v = 0;
  const char* end = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(cell.data(), end, v);
  if (ec != std::errc() || ptr != end || cell.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("'", cell, "' is not an integer"));
  }
  if (!dom.integer().Contains(v)) {
    return absl::InvalidArgumentError(
        absl::StrCat("value ", v, " outside [", dom.integer().min, ", ",
                     dom.integer().max, "]"));
  }
  return v;
}

std::string EscapeCsv(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos &&
      absl::StripAsciiWhitespace(s) == s) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

absl::StatusOr<Table> LoadTableCsv(std::istream& in,
                                   std::shared_ptr<const Schema> schema) {
  std::string line;
  if (!std::getline(in, line)) {
    return absl::InvalidArgumentError("CSV input has no header row");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  // Tolerate a UTF-8 byte order mark.
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  ASSIGN_OR_RETURN(std::vector<std::string> header, SplitCsvLine(line));

  // header position -> schema index
  std::vector<size_t> mapping(header.size());
  std::vector<bool> covered(schema->size(), false);
  for (size_t i = 0; i < header.size(); ++i) {
    std::optional<size_t> idx = schema->IndexOf(header[i]);
    if (!idx) {
      return absl::InvalidArgumentError(
          absl::StrCat("header: unknown column '", header[i], "'"));
    }
    if (covered[*idx]) {
      return absl::InvalidArgumentError(
          absl::StrCat("header: duplicate column '", header[i], "'"));
    }
    covered[*idx] = true;
    mapping[i] = *idx;
  }
  for (size_t c = 0; c < covered.size(); ++c) {
    if (!covered[c]) {
      return absl::InvalidArgumentError(absl::StrCat(
          "header: missing column '", schema->attribute(c).name, "'"));
    }
  }

  TableBuilder builder(schema);
  std::vector<int64_t> row(schema->size());
  size_t row_index = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    ++row_index;
    absl::StatusOr<std::vector<std::string>> fields = SplitCsvLine(line);
    if (!fields.ok()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "row ", row_index, ": ", fields.status().message()));
    }
    if (fields->size() != header.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("row ", row_index, ": expected ", header.size(),
                       " fields, got ", fields->size()));
    }
    for (size_t i = 0; i < fields->size(); ++i) {
      const Attribute& attr = schema->attribute(mapping[i]);
      absl::StatusOr<int64_t> v = ParseCell(attr.domain, (*fields)[i]);
      if (!v.ok()) {
        return absl::InvalidArgumentError(
            absl::StrCat("row ", row_index, ", column '", attr.name,
                         "': ", v.status().message()));
      }
      row[mapping[i]] = *v;
    }
    RETURN_IF_ERROR(builder.AddRow(row));
  }
  return std::move(builder).Build();
}

absl::StatusOr<Table> LoadTableCsvFile(const std::string& path,
                                       std::shared_ptr<const Schema> schema) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  return LoadTableCsv(in, std::move(schema));
}

std::string WriteTableCsv(const Table& table) {
  const Schema& schema = table.schema();
  std::string out;
  for (size_t c = 0; c < schema.size(); ++c) {
    if (c > 0) out.push_back(',');
    out += EscapeCsv(schema.attribute(c).name);
  }
  out.push_back('\n');
  for (size_t r = 0; r < table.num_rows(); ++r) {
    for (size_t c = 0; c < schema.size(); ++c) {
      if (c > 0) out.push_back(',');
      const AttributeDomain& dom = schema.attribute(c).domain;
      const int64_t v = table.value(r, c);
      if (dom.is_categorical()) {
        out += EscapeCsv(dom.categorical().values[static_cast<size_t>(v)]);
      } else {
        absl::StrAppend(&out, v);
      }
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace pqdecide
