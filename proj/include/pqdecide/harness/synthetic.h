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

#ifndef PQDECIDE_HARNESS_SYNTHETIC_H_
#define PQDECIDE_HARNESS_SYNTHETIC_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"
#include "pqdecide/dp/random.h"
#include "pqdecide/relational/query.h"
#include "pqdecide/relational/table.h"

namespace pqdecide {

// Recipe for a (D, D_s) pair with a known gap on one designated query.
struct SyntheticPairSpec {
  std::shared_ptr<const Schema> schema;
  std::string query;
  int64_t rows = 1000;
  // Rows of D that satisfy the predicate. Defaults to rows / 2, or to all
  // rows when the predicate has no conditions.
  std::optional<int64_t> matching_rows;
  // q(D_s) - q(D); exact for every aggregate.
  int64_t gap = 0;
  // For SUM and MEDIAN: the largest aggregate value among matching rows of D.
  std::optional<int64_t> target_ds;
  uint64_t seed = 0;
};

struct SyntheticPair {
  Table data;
  Table synthetic;
  AggregateQuery query;
};

// Builds D by sampling matching rows inside the predicate's box and the rest
// outside it, then derives D_s by perturbing D:
//   COUNT   add or remove matching rows
//   SUM     raise or lower matching values, adding rows if raising runs out
//   MEDIAN  shift every matching value by the gap
// Fails when the requested gap or target cannot be met inside the domain.
absl::StatusOr<SyntheticPair> GenSyntheticPair(const SyntheticPairSpec& spec,
                                               RandomSource& rng);
absl::StatusOr<SyntheticPair> GenSyntheticPair(const SyntheticPairSpec& spec);

// JSON form documented in docs/formats.md. A "schema_path" entry is resolved
// relative to `base_dir`.
absl::StatusOr<SyntheticPairSpec> ParseSyntheticPairSpec(
    std::string_view json_text, const std::string& base_dir);

}  // namespace pqdecide

#endif  // PQDECIDE_HARNESS_SYNTHETIC_H_
