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

#include "pqdecide/decider/types.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace pqdecide {

absl::StatusOr<double> TauSpec::Resolve(double q_synthetic) const {
  if (!std::isfinite(value_) || value_ <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("tau must be positive, got ", value_));
  }
  const double tau =
      is_percent_ ? std::fabs(q_synthetic) * value_ / 100.0 : value_;
  if (!(tau > 0) || !std::isfinite(tau)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "percentage tau resolves to ", tau, " because q(D_s) = ", q_synthetic,
        "; use an absolute tau"));
  }
  return tau;
}

std::string TauSpec::ToString() const {
  return is_percent_ ? absl::StrFormat("%g%%", value_)
                     : absl::StrFormat("%g", value_);
}

const char* ErrorKindName(ErrorKind k) {
  switch (k) {
    case ErrorKind::kClosedForm:
      return "closed_form";
    case ErrorKind::kUpperBound:
      return "upper_bound";
    case ErrorKind::kMonteCarlo:
      return "monte_carlo";
  }
  return "?";
}

ErrorReport MakeErrorReport(double q_data, double q_synthetic, double tau,
                            double error_value, ErrorKind kind) {
  ErrorReport r;
  r.d_q = std::fabs(q_data - q_synthetic);
  r.correct_outcome = r.d_q < tau ? 1 : 0;
  r.error_value = error_value;
  r.kind = kind;
  return r;
}

absl::Status CheckEpsilonDelta(double eps, double delta) {
  if (!std::isfinite(eps) || eps <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be finite and positive, got ", eps));
  }
  if (!(delta > 0 && delta < 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("delta must lie in (0, 1), got ", delta));
  }
  return absl::OkStatus();
}

namespace {
struct KindEntry {
  DeciderKind kind;
  const char* name;
  AggregateKind aggregate;
};
constexpr KindEntry kKinds[] = {
    {DeciderKind::kLmCount, "lm_count", AggregateKind::kCount},
    {DeciderKind::kEmCountNaive, "em_count_naive", AggregateKind::kCount},
    {DeciderKind::kEmCount, "em_count", AggregateKind::kCount},
    {DeciderKind::kLmSum, "lm_sum", AggregateKind::kSum},
    {DeciderKind::kR2tSum, "r2t_sum", AggregateKind::kSum},
    {DeciderKind::kSvtSum, "svt_sum", AggregateKind::kSum},
    {DeciderKind::kEmMed, "em_med", AggregateKind::kMedian},
    {DeciderKind::kHistMed, "hist_med", AggregateKind::kMedian},
};
}  // namespace

const char* DeciderKindName(DeciderKind k) {
  for (const KindEntry& e : kKinds) {
    if (e.kind == k) return e.name;
  }
  return "?";
}

absl::StatusOr<DeciderKind> ParseDeciderKind(std::string_view name) {
  for (const KindEntry& e : kKinds) {
    if (name == e.name) return e.kind;
  }
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown decider '", std::string(name),
      "'; expected one of lm_count, em_count_naive, em_count, lm_sum, "
      "r2t_sum, svt_sum, em_med, hist_med"));
}

AggregateKind RequiredAggregate(DeciderKind k) {
  for (const KindEntry& e : kKinds) {
    if (e.kind == k) return e.aggregate;
  }
  return AggregateKind::kCount;
}

}  // namespace pqdecide
