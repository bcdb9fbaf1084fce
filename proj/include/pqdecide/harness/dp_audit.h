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

#ifndef PQDECIDE_HARNESS_DP_AUDIT_H_
#define PQDECIDE_HARNESS_DP_AUDIT_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "pqdecide/harness/trials.h"

namespace pqdecide {

struct DpRatioResult {
  int64_t trials = 0;
  int64_t ones_d = 0;
  int64_t ones_neighbor = 0;
  double p_d = 0;
  double p_neighbor = 0;
  // max(p_d / p_neighbor, p_neighbor / p_d); infinite if exactly one is 0.
  double ratio = 1;
  // Delta-method standard error of the log ratio, used as a relative error.
  double se = 0;
  double epsilon = 0;
  // e^eps * (1 + 4 se)
  double bound = 0;
  bool passes = false;
};

// Estimates Pr[o = 1] for the planned decider on plan.data and on `neighbor`
// (same synthetic table, same resolved tau) and compares the two directional
// ratios against e^eps. The neighbor run uses a seed derived from plan.seed,
// so the two estimates are independent. plan.noise_scale_factor applies to
// both runs, which is how a broken decider is simulated.
absl::StatusOr<DpRatioResult> DpRatioCheck(const TrialPlan& plan,
                                           const Table& neighbor);

// The comparison on its own, for counts gathered elsewhere.
DpRatioResult CompareRatio(int64_t ones_d, int64_t ones_neighbor,
                           int64_t trials, double epsilon);

}  // namespace pqdecide

#endif  // PQDECIDE_HARNESS_DP_AUDIT_H_
