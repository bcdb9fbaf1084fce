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

#ifndef PQDECIDE_RELATIONAL_EVALUATE_H_
#define PQDECIDE_RELATIONAL_EVALUATE_H_

#include <cstdint>
#include <vector>

#include "absl/status/statusor.h"
#include "pqdecide/relational/query.h"
#include "pqdecide/relational/table.h"

namespace pqdecide {

// One byte per row: 1 if the row satisfies `pred`, else 0.
std::vector<uint8_t> PredicateMask(const Predicate& pred, const Table& t);

// Number of rows satisfying `pred` (n' in the median formulas).
int64_t MatchingCount(const Predicate& pred, const Table& t);

// Aggregate-attribute values of the matching rows, sorted ascending.
std::vector<int64_t> MatchingValuesSorted(const AggregateQuery& q,
                                          const Table& t);

// Exact answer q(t). MEDIAN is the ceil(n'/2)-th smallest matching value and
// fails with FailedPrecondition on empty support.
absl::StatusOr<int64_t> Answer(const AggregateQuery& q, const Table& t);

// Sum over matching rows whose aggregate value is at most `threshold`.
// Requires a SUM query.
absl::StatusOr<int64_t> TruncatedSum(const AggregateQuery& q, const Table& t,
                                     int64_t threshold);

// Number of matching rows whose `attribute` value is strictly below `e`.
int64_t Rank(const Table& t, const Predicate& pred, size_t attribute,
             int64_t e);

// Number of matching rows with `attribute` in [lo, hi].
int64_t CountMatchingInRange(const Table& t, const Predicate& pred,
                             size_t attribute, int64_t lo, int64_t hi);

// Largest possible |q(t) - q(t')| over t' obtained by deleting one row.
// Non-private; intended for tests and oracles. COUNT and SUM use their
// closed forms, MEDIAN enumerates deletions (a deletion that leaves the
// support empty is skipped).
int64_t DownwardLocalSensitivity(const AggregateQuery& q, const Table& t);

}  // namespace pqdecide

#endif  // PQDECIDE_RELATIONAL_EVALUATE_H_
