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

#include "pqdecide/harness/sweep.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "pqdecide/relational/evaluate.h"
#include "pqdecide/status_macros.h"

namespace pqdecide {

std::optional<double> FirstTauPctInInterval(double q_data, double q_synthetic,
                                            const std::vector<double>& pcts) {
  std::vector<double> sorted = pcts;
  std::sort(sorted.begin(), sorted.end());
  const double d_q = std::fabs(q_data - q_synthetic);
  for (double p : sorted) {
    if (d_q < std::fabs(q_synthetic) * p / 100.0) return p;
  }
  return std::nullopt;
}

absl::StatusOr<std::vector<ResultRow>> Sweep(const SweepSpec& spec) {
  if (spec.data == nullptr || spec.synthetic == nullptr) {
    return absl::InvalidArgumentError("sweep needs both tables");
  }
  for (double p : spec.grid.tau_percents) {
    if (!(p > 0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("tau percentages must be positive, got ", p));
    }
  }
  std::vector<PrivacyBudget> budgets;
  for (double e : spec.grid.epsilons) {
    ASSIGN_OR_RETURN(PrivacyBudget b, PrivacyBudget::Create(e));
    budgets.push_back(b);
  }

  std::vector<ResultRow> rows;
  for (const NamedQuery& nq : spec.queries) {
    absl::StatusOr<int64_t> qd = Answer(nq.query, *spec.data);
    absl::StatusOr<int64_t> qs = Answer(nq.query, *spec.synthetic);
    std::optional<double> marker;
    if (qd.ok() && qs.ok()) {
      marker = FirstTauPctInInterval(static_cast<double>(*qd),
                                     static_cast<double>(*qs),
                                     spec.grid.tau_percents);
    }
    for (DeciderKind kind : spec.deciders) {
      if (RequiredAggregate(kind) != nq.query.kind()) continue;
      for (double pct : spec.grid.tau_percents) {
        for (const PrivacyBudget& eps : budgets) {
          TrialPlan plan;
          plan.query_id = nq.id;
          plan.decider = kind;
          plan.query = &nq.query;
          plan.data = spec.data;
          plan.synthetic = spec.synthetic;
          plan.tau = TauSpec::PercentOfSynthetic(pct);
          plan.epsilon = eps;
          plan.options = spec.options;
          plan.trials = spec.trials;
          plan.seed = spec.seed;
          plan.threads = spec.threads;
          plan.mode = spec.mode;
          absl::StatusOr<ResultRow> row = RunTrials(plan);
          if (!row.ok()) {
            return absl::Status(
                row.status().code(),
                absl::StrCat("query '", nq.id, "', decider ",
                             DeciderKindName(kind), ": ",
                             row.status().message()));
          }
          row->first_tau_pct_in_interval = marker;
          rows.push_back(*std::move(row));
        }
      }
    }
  }
  return rows;
}

}  // namespace pqdecide
