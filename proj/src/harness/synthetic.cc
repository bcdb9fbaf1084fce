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

#include "pqdecide/harness/synthetic.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "json.hpp"
#include "pqdecide/relational/evaluate.h"
#include "pqdecide/status_macros.h"

namespace pqdecide {
namespace {

using Row = std::vector<int64_t>;

int64_t UniformInt(RandomSource& rng, int64_t lo, int64_t hi) {
  const unsigned __int128 span =
      static_cast<unsigned __int128>(static_cast<uint64_t>(hi - lo)) + 1;
  const uint64_t offset = static_cast<uint64_t>(
      (static_cast<unsigned __int128>(rng.NextU64()) * span) >> 64);
  return lo + static_cast<int64_t>(offset);
}

// Per-column bounds: the domain intersected with the predicate.
struct Box {
  std::vector<int64_t> lo;
  std::vector<int64_t> hi;
  bool empty() const {
    for (size_t c = 0; c < lo.size(); ++c) {
      if (lo[c] > hi[c]) return true;
    }
    return false;
  }
};

std::pair<int64_t, int64_t> DomainBounds(const AttributeDomain& d) {
  if (d.is_integer()) return {d.integer().min, d.integer().max};
  return {0, static_cast<int64_t>(d.categorical().values.size()) - 1};
}

Box FullDomain(const Schema& schema) {
  Box b;
  for (const Attribute& a : schema.attributes()) {
    auto [lo, hi] = DomainBounds(a.domain);
    b.lo.push_back(lo);
    b.hi.push_back(hi);
  }
  return b;
}

Box PredicateBox(const Schema& schema, const Predicate& pred) {
  Box b = FullDomain(schema);
  for (const ColumnRange& r : pred.ranges()) {
    b.lo[r.column] = std::max(b.lo[r.column], r.lo);
    b.hi[r.column] = std::min(b.hi[r.column], r.hi);
  }
  return b;
}

Row SampleIn(const Box& box, RandomSource& rng) {
  Row row(box.lo.size());
  for (size_t c = 0; c < row.size(); ++c) {
    row[c] = UniformInt(rng, box.lo[c], box.hi[c]);
  }
  return row;
}

absl::Status Infeasible(std::string_view why) {
  return absl::InvalidArgumentError(
      absl::StrCat("infeasible synthetic pair spec: ", std::string(why)));
}

absl::StatusOr<Table> BuildTable(std::shared_ptr<const Schema> schema,
                                 const std::vector<Row>& rows) {
  TableBuilder b(std::move(schema));
  for (const Row& r : rows) RETURN_IF_ERROR(b.AddRow(r));
  return std::move(b).Build();
}

}  // namespace

absl::StatusOr<SyntheticPair> GenSyntheticPair(const SyntheticPairSpec& spec) {
  RandomSource rng(spec.seed, 0);
  return GenSyntheticPair(spec, rng);
}

absl::StatusOr<SyntheticPair> GenSyntheticPair(const SyntheticPairSpec& spec,
                                               RandomSource& rng) {
  if (spec.schema == nullptr) {
    return absl::InvalidArgumentError("synthetic pair spec has no schema");
  }
  const Schema& schema = *spec.schema;
  ASSIGN_OR_RETURN(AggregateQuery query, ParseAndBindQuery(spec.query, schema));
  if (spec.rows < 0) return Infeasible("rows must be nonnegative");

  const Predicate& pred = query.predicate();
  const int64_t matching =
      spec.matching_rows.value_or(pred.ranges().empty() ? spec.rows
                                                        : spec.rows / 2);
  if (matching < 0 || matching > spec.rows) {
    return Infeasible("matching_rows must lie in [0, rows]");
  }
  if (pred.ranges().empty() && matching != spec.rows) {
    return Infeasible("the query matches every row, so matching_rows must "
                      "equal rows");
  }

  Box box = PredicateBox(schema, pred);
  const bool aggregates_value = query.kind() != AggregateKind::kCount;
  const size_t agg = query.attribute();
  if (aggregates_value && spec.target_ds.has_value()) {
    const int64_t ds = *spec.target_ds;
    if (ds < box.lo[agg] || ds > box.hi[agg]) {
      return Infeasible(absl::StrCat("target_ds ", ds,
                                     " is outside the predicate's range [",
                                     box.lo[agg], ", ", box.hi[agg], "]"));
    }
  }
  if (box.empty() && (matching > 0 || spec.gap != 0)) {
    return Infeasible("no row can satisfy the predicate");
  }
  if (query.kind() == AggregateKind::kMedian && matching == 0) {
    return Infeasible("MEDIAN needs at least one matching row");
  }

  // Matching rows; aggregate values capped at target_ds with one row on it.
  Box match_box = box;
  if (aggregates_value && spec.target_ds.has_value()) {
    match_box.hi[agg] = *spec.target_ds;
  }
  // A median shift must keep every matching value inside the predicate, so
  // sample from the part of the range that survives the shift.
  if (query.kind() == AggregateKind::kMedian) {
    match_box.lo[agg] = std::max(box.lo[agg], box.lo[agg] - spec.gap);
    match_box.hi[agg] = std::min(box.hi[agg], box.hi[agg] - spec.gap);
    if (match_box.lo[agg] > match_box.hi[agg]) {
      return Infeasible("the gap is wider than the median's range");
    }
  }
  std::vector<Row> rows;
  rows.reserve(static_cast<size_t>(spec.rows));
  for (int64_t i = 0; i < matching; ++i) {
    rows.push_back(SampleIn(match_box, rng));
  }
  if (aggregates_value && spec.target_ds.has_value() && matching > 0) {
    rows[0][agg] = *spec.target_ds;
  }

  const Box full = FullDomain(schema);
  constexpr int kMaxAttempts = 10000;
  for (int64_t i = matching; i < spec.rows; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < kMaxAttempts && !placed; ++attempt) {
      Row r = SampleIn(full, rng);
      if (!pred.MatchesRow(r)) {
        rows.push_back(std::move(r));
        placed = true;
      }
    }
    if (!placed) {
      return Infeasible(
          "could not sample rows outside the predicate; raise matching_rows");
    }
  }
  // Fisher-Yates so matching rows are not clustered at the top.
  for (size_t i = rows.size(); i > 1; --i) {
    std::swap(rows[i - 1],
              rows[static_cast<size_t>(UniformInt(rng, 0, static_cast<int64_t>(i) - 1))]);
  }

  std::vector<Row> srows = rows;
  std::vector<size_t> match_idx;
  for (size_t i = 0; i < srows.size(); ++i) {
    if (pred.MatchesRow(srows[i])) match_idx.push_back(i);
  }
  int64_t gap = spec.gap;
  switch (query.kind()) {
    case AggregateKind::kCount: {
      if (gap > 0) {
        for (int64_t i = 0; i < gap; ++i) srows.push_back(SampleIn(box, rng));
      } else if (gap < 0) {
        if (static_cast<int64_t>(match_idx.size()) < -gap) {
          return Infeasible("cannot remove more matching rows than exist");
        }
        std::vector<size_t> drop(match_idx.end() + gap, match_idx.end());
        std::sort(drop.rbegin(), drop.rend());
        for (size_t i : drop) {
          srows.erase(srows.begin() + static_cast<ptrdiff_t>(i));
        }
      }
      break;
    }
    case AggregateKind::kSum: {
      const int64_t lo = box.lo[agg];
      const int64_t hi = box.hi[agg];
      for (size_t i : match_idx) {
        if (gap == 0) break;
        int64_t& v = srows[i][agg];
        const int64_t next = std::clamp(v + gap, lo, hi);
        gap -= next - v;
        v = next;
      }
      while (gap > 0) {
        if (hi <= 0) return Infeasible("cannot raise the sum any further");
        Row r = SampleIn(box, rng);
        r[agg] = std::min(hi, gap);
        gap -= r[agg];
        srows.push_back(std::move(r));
      }
      if (gap < 0) {
        return Infeasible("cannot lower the sum by the requested gap");
      }
      break;
    }
    case AggregateKind::kMedian: {
      for (size_t i : match_idx) {
        int64_t& v = srows[i][agg];
        if (v + gap < box.lo[agg] || v + gap > box.hi[agg]) {
          return Infeasible(
              "shifting matching values by the gap leaves the domain");
        }
        v += gap;
      }
      break;
    }
  }

  ASSIGN_OR_RETURN(Table d, BuildTable(spec.schema, rows));
  ASSIGN_OR_RETURN(Table ds, BuildTable(spec.schema, srows));
  ASSIGN_OR_RETURN(int64_t qd, Answer(query, d));
  ASSIGN_OR_RETURN(int64_t qs, Answer(query, ds));
  if (qs - qd != spec.gap) {
    return absl::InternalError(absl::StrCat("generated gap ", qs - qd,
                                            " differs from requested ",
                                            spec.gap));
  }
  return SyntheticPair{std::move(d), std::move(ds), std::move(query)};
}

absl::StatusOr<SyntheticPairSpec> ParseSyntheticPairSpec(
    std::string_view json_text, const std::string& base_dir) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("spec is not valid JSON: ", e.what()));
  }
  SyntheticPairSpec spec;
  try {
    if (j.contains("schema")) {
      ASSIGN_OR_RETURN(Schema s, ParseSchemaJson(j.at("schema").dump()));
      spec.schema = std::make_shared<const Schema>(std::move(s));
    } else if (j.contains("schema_path")) {
      std::filesystem::path p = j.at("schema_path").get<std::string>();
      if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
      std::ifstream in(p);
      if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", p.string()));
      std::stringstream buf;
      buf << in.rdbuf();
      ASSIGN_OR_RETURN(Schema s, ParseSchemaJson(buf.str()));
      spec.schema = std::make_shared<const Schema>(std::move(s));
    } else {
      return absl::InvalidArgumentError("spec needs 'schema' or 'schema_path'");
    }
    if (!j.contains("query")) {
      return absl::InvalidArgumentError("spec needs a 'query'");
    }
    spec.query = j.at("query").get<std::string>();
    spec.rows = j.value("rows", spec.rows);
    if (j.contains("matching_rows")) {
      spec.matching_rows = j.at("matching_rows").get<int64_t>();
    }
    spec.gap = j.value("gap", int64_t{0});
    if (j.contains("target_ds")) spec.target_ds = j.at("target_ds").get<int64_t>();
    spec.seed = j.value("seed", uint64_t{0});
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed spec field: ", e.what()));
  }
  return spec;
}

}  // namespace pqdecide
