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

#ifndef PQDECIDE_HARNESS_TRIALS_H_
#define PQDECIDE_HARNESS_TRIALS_H_

#include <cstdint>
#include <optional>
#include <string>

#include "absl/status/statusor.h"
#include "pqdecide/decider/decider.h"

namespace pqdecide {

struct TrialPlan {
  std::string query_id;
  DeciderKind decider = DeciderKind::kLmCount;
  const AggregateQuery* query = nullptr;
  const Table* data = nullptr;
  const Table* synthetic = nullptr;
  TauSpec tau = TauSpec::PercentOfSynthetic(3.2);
  PrivacyBudget epsilon;
  DeciderOptions options;
  int64_t trials = 100;
  uint64_t seed = 0;
  NoiseMode mode = NoiseMode::kLive;
  // Worker threads; results do not depend on this.
  int threads = 1;
  // Fault injection, see NoiseSource::set_noise_scale_factor.
  double noise_scale_factor = 1.0;
};

struct ResultRow {
  std::string query_id;
  std::string decider;
  std::optional<double> tau_pct;
  double tau = 0;
  double epsilon = 0;
  int64_t trials = 0;
  double error = 0;
  double false_positive = 0;
  double false_negative = 0;
  int correct_outcome = 0;
  double d_q = 0;
  // Smallest grid percentage whose interval contains q(D); filled by sweeps.
  std::optional<double> first_tau_pct_in_interval;
  uint64_t seed = 0;
  double wall_seconds = 0;
  // Number of trials that returned o = 1.
  int64_t ones = 0;
};

// Runs `plan.trials` independent decisions; trial i draws from
// RandomSource(plan.seed, i). Errors are measured against d_q < tau on the
// exact answers. Fails if the decider does not fit the query or q(D) is
// undefined.
absl::StatusOr<ResultRow> RunTrials(const TrialPlan& plan);

// Same loop over an already constructed decider.
ResultRow RunTrialsWithDecider(const Decider& decider, const TrialPlan& plan);

}  // namespace pqdecide

#endif  // PQDECIDE_HARNESS_TRIALS_H_
