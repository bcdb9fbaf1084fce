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

#include "pqdecide/harness/dp_audit.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "pqdecide/status_macros.h"

namespace pqdecide {

DpRatioResult CompareRatio(int64_t ones_d, int64_t ones_neighbor,
                           int64_t trials, double epsilon) {
  DpRatioResult res;
  res.trials = trials;
  res.ones_d = ones_d;
  res.ones_neighbor = ones_neighbor;
  res.epsilon = epsilon;
  const double n = static_cast<double>(trials);
  res.p_d = static_cast<double>(ones_d) / n;
  res.p_neighbor = static_cast<double>(ones_neighbor) / n;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (ones_d == 0 && ones_neighbor == 0) {
    res.ratio = 1;
    res.se = 0;
  } else if (ones_d == 0 || ones_neighbor == 0) {
    res.ratio = kInf;
    res.se = kInf;
  } else {
    res.ratio = std::max(res.p_d / res.p_neighbor, res.p_neighbor / res.p_d);
    res.se = std::sqrt((1 - res.p_d) / (n * res.p_d) +
                       (1 - res.p_neighbor) / (n * res.p_neighbor));
  }
  res.bound = std::exp(epsilon) * (1 + 4 * res.se);
  res.passes = std::isfinite(res.ratio) && res.ratio <= res.bound;
  return res;
}

absl::StatusOr<DpRatioResult> DpRatioCheck(const TrialPlan& plan,
                                           const Table& neighbor) {
  if (plan.trials < 1) {
    return absl::InvalidArgumentError("a ratio check needs at least one trial");
  }
  DeciderRequest req;
  req.query = plan.query;
  req.data = plan.data;
  req.synthetic = plan.synthetic;
  req.tau = plan.tau;
  req.epsilon = plan.epsilon;
  req.options = plan.options;
  ASSIGN_OR_RETURN(std::unique_ptr<Decider> on_d,
                   CreateDecider(plan.decider, req));
  req.data = &neighbor;
  ASSIGN_OR_RETURN(std::unique_ptr<Decider> on_neighbor,
                   CreateDecider(plan.decider, req));

  const ResultRow a = RunTrialsWithDecider(*on_d, plan);
  TrialPlan other = plan;
  other.data = &neighbor;
  other.seed = Mix64(plan.seed ^ 0x6e65696768626f72ULL);
  const ResultRow b = RunTrialsWithDecider(*on_neighbor, other);
  return CompareRatio(a.ones, b.ones, plan.trials, plan.epsilon.epsilon());
}

}  // namespace pqdecide
