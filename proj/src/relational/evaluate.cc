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

#include "pqdecide/relational/evaluate.h"

#include <algorithm>
#include <cstdlib>

#include "absl/status/status.h"
#include "pqdecide/kernels/scan.h"

namespace pqdecide {

std::vector<uint8_t> PredicateMask(const Predicate& pred, const Table& t) {
  std::vector<uint8_t> mask(t.num_rows(), 1);
  for (const ColumnRange& r : pred.ranges()) {
    kernels::RangeMaskAnd(t.column(r.column), r.lo, r.hi, mask);
  }
  return mask;
}

int64_t MatchingCount(const Predicate& pred, const Table& t) {
  if (t.num_rows() == 0) return 0;
  const std::vector<uint8_t> mask = PredicateMask(pred, t);
  return kernels::CountInRange(t.column(0), mask, INT64_MIN, INT64_MAX);
}

std::vector<int64_t> MatchingValuesSorted(const AggregateQuery& q,
                                          const Table& t) {
  const std::vector<uint8_t> mask = PredicateMask(q.predicate(), t);
  std::span<const int64_t> col = t.column(q.attribute());
  std::vector<int64_t> values;
  for (size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) values.push_back(col[i]);
  }
  std::sort(values.begin(), values.end());
  return values;
}

namespace {

int64_t MedianOfSorted(const std::vector<int64_t>& sorted) {
  // ceil(n/2)-th smallest, 1-based.
  return sorted[(sorted.size() + 1) / 2 - 1];
}

}  // namespace

absl::StatusOr<int64_t> Answer(const AggregateQuery& q, const Table& t) {
  switch (q.kind()) {
    case AggregateKind::kCount:
      return MatchingCount(q.predicate(), t);
    case AggregateKind::kSum: {
      const std::vector<uint8_t> mask = PredicateMask(q.predicate(), t);
      return kernels::SumInRange(t.column(q.attribute()), mask, INT64_MIN,
                                 INT64_MAX);
    }
    case AggregateKind::kMedian: {
      const std::vector<int64_t> values = MatchingValuesSorted(q, t);
      if (values.empty()) {
        return absl::FailedPreconditionError(
            "MEDIAN over empty support: no rows satisfy the predicate");
      }
      return MedianOfSorted(values);
    }
  }
  return absl::InternalError("unknown aggregate kind");
}

absl::StatusOr<int64_t> TruncatedSum(const AggregateQuery& q, const Table& t,
                                     int64_t threshold) {
  if (q.kind() != AggregateKind::kSum) {
    return absl::InvalidArgumentError("truncated sum needs a SUM query");
  }
  const std::vector<uint8_t> mask = PredicateMask(q.predicate(), t);
  return kernels::SumInRange(t.column(q.attribute()), mask, INT64_MIN,
                             threshold);
}

int64_t Rank(const Table& t, const Predicate& pred, size_t attribute,
             int64_t e) {
  if (e == INT64_MIN) return 0;
  return CountMatchingInRange(t, pred, attribute, INT64_MIN, e - 1);
}

int64_t CountMatchingInRange(const Table& t, const Predicate& pred,
                             size_t attribute, int64_t lo, int64_t hi) {
  const std::vector<uint8_t> mask = PredicateMask(pred, t);
  return kernels::CountInRange(t.column(attribute), mask, lo, hi);
}

int64_t DownwardLocalSensitivity(const AggregateQuery& q, const Table& t) {
  switch (q.kind()) {
    case AggregateKind::kCount:
      return MatchingCount(q.predicate(), t) > 0 ? 1 : 0;
    case AggregateKind::kSum: {
      const std::vector<uint8_t> mask = PredicateMask(q.predicate(), t);
      return kernels::MaxInRange(t.column(q.attribute()), mask, INT64_MIN,
                                 INT64_MAX, 0);
    }
    case AggregateKind::kMedian: {
      // Deleting a non-matching row leaves the answer unchanged, and deleting
      // any of several equal matching values gives the same table up to
      // order, so it suffices to try one deletion per distinct value.
      std::vector<int64_t> values = MatchingValuesSorted(q, t);
      if (values.size() <= 1) return 0;
      const int64_t full = MedianOfSorted(values);
      int64_t best = 0;
      for (size_t i = 0; i < values.size(); ++i) {
        if (i > 0 && values[i] == values[i - 1]) continue;
        std::vector<int64_t> rest = values;
        rest.erase(rest.begin() + static_cast<ptrdiff_t>(i));
        const int64_t diff = full - MedianOfSorted(rest);
        best = std::max(best, diff < 0 ? -diff : diff);
      }
      return best;
    }
  }
  return 0;
}

}  // namespace pqdecide
