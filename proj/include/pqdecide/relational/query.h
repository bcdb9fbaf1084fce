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

#ifndef PQDECIDE_RELATIONAL_QUERY_H_
#define PQDECIDE_RELATIONAL_QUERY_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "absl/status/statusor.h"
#include "pqdecide/relational/schema.h"

namespace pqdecide {

// LIKE is treated as exact equality on the label; no wildcard matching.
enum class Comparator { kEq, kLike, kLt, kLe, kGt, kGe };

const char* ComparatorSymbol(Comparator c);

// A constant as written in the query text: a number or a quoted string.
using Constant = std::variant<double, std::string>;

// One `attribute <op> constant` term before binding to a schema.
struct PredicateAtom {
  std::string attribute;
  Comparator op = Comparator::kEq;
  Constant constant;
};

enum class AggregateKind { kCount, kSum, kMedian };

const char* AggregateKindName(AggregateKind k);

// Output of the parser: names only, nothing checked against a schema.
struct ParsedQuery {
  AggregateKind kind = AggregateKind::kCount;
  std::string attribute;  // empty for COUNT(*)
  std::string table;
  std::vector<PredicateAtom> atoms;
};

// Grammar (keywords case-insensitive):
//   SELECT COUNT(*) | SUM(a) | MEDIAN(a) FROM t [WHERE atom {AND atom}] [;]
//   atom := ident ( = | < | <= | > | >= | LIKE ) ( number | 'text' | "text" )
// Identifiers may contain '-' after the first character, e.g. capital-gain.
absl::StatusOr<ParsedQuery> ParseQuery(std::string_view text);

// Inclusive range test on one encoded column. lo > hi matches nothing.
struct ColumnRange {
  size_t column = 0;
  int64_t lo = INT64_MIN;
  int64_t hi = INT64_MAX;

  bool Contains(int64_t v) const { return v >= lo && v <= hi; }
  bool empty() const { return lo > hi; }
};

// A conjunction reduced to at most one range per column. An empty list
// matches every row.
class Predicate {
 public:
  Predicate() = default;

  // Compiles atoms against a schema. Out-of-domain constants are kept and
  // compared literally; ordering comparisons on categoricals are rejected.
  static absl::StatusOr<Predicate> FromAtoms(
      const Schema& schema, const std::vector<PredicateAtom>& atoms);

  // Narrows the range on `column` to its intersection with [lo, hi].
  void Restrict(size_t column, int64_t lo, int64_t hi);

  const std::vector<ColumnRange>& ranges() const { return ranges_; }
  bool MatchesNothing() const;
  bool MatchesRow(const std::vector<int64_t>& row) const;

  // Range on `column`, or the unbounded range when unconstrained.
  ColumnRange RangeFor(size_t column) const;

 private:
  std::vector<ColumnRange> ranges_;
};

// A query bound to a schema. Sum and Median aggregate over an integer
// attribute whose domain minimum is nonnegative.
class AggregateQuery {
 public:
  static AggregateQuery Count(Predicate predicate = {});
  static absl::StatusOr<AggregateQuery> Sum(const Schema& schema,
                                            size_t attribute,
                                            Predicate predicate = {});
  static absl::StatusOr<AggregateQuery> Median(const Schema& schema,
                                               size_t attribute,
                                               Predicate predicate = {});

  AggregateKind kind() const { return kind_; }
  // Aggregate column; only meaningful for Sum and Median.
  size_t attribute() const { return attribute_; }
  const Predicate& predicate() const { return predicate_; }

  // Original text when created from a string, else a rendered form.
  const std::string& text() const { return text_; }
  void set_text(std::string text) { text_ = std::move(text); }

 private:
  AggregateQuery(AggregateKind kind, size_t attribute, Predicate predicate)
      : kind_(kind), attribute_(attribute), predicate_(std::move(predicate)) {}

  AggregateKind kind_;
  size_t attribute_ = 0;
  Predicate predicate_;
  std::string text_;
};

absl::StatusOr<AggregateQuery> BindQuery(const ParsedQuery& parsed,
                                         const Schema& schema);

// ParseQuery followed by BindQuery; the result keeps `text`.
absl::StatusOr<AggregateQuery> ParseAndBindQuery(std::string_view text,
                                                 const Schema& schema);

// Renders a query in the accepted grammar, using table name `table`.
std::string RenderQuery(const AggregateQuery& q, const Schema& schema,
                        std::string_view table = "t");

}  // namespace pqdecide

#endif  // PQDECIDE_RELATIONAL_QUERY_H_
