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

#include "pqdecide/harness/trials.h"

#include <algorithm>
#include <chrono>
#include <thread>
#include <vector>

#include "absl/status/status.h"
#include "pqdecide/status_macros.h"

namespace pqdecide {
namespace {

int64_t CountOnes(const Decider& decider, const TrialPlan& plan, int64_t begin,
                  int64_t end) {
  int64_t ones = 0;
  for (int64_t i = begin; i < end; ++i) {
    NoiseSource noise(RandomSource(plan.seed, static_cast<uint64_t>(i)),
                      plan.mode);
    noise.set_noise_scale_factor(plan.noise_scale_factor);
    ones += decider.Decide(noise).o;
  }
  return ones;
}

}  // namespace

ResultRow RunTrialsWithDecider(const Decider& decider, const TrialPlan& plan) {
  const auto start = std::chrono::steady_clock::now();
  const int threads = static_cast<int>(
      std::clamp<int64_t>(plan.threads, 1, std::max<int64_t>(plan.trials, 1)));
  int64_t ones = 0;
  if (threads == 1) {
    ones = CountOnes(decider, plan, 0, plan.trials);
  } else {
    std::vector<int64_t> partial(static_cast<size_t>(threads), 0);
    std::vector<std::thread> workers;
    const int64_t chunk = (plan.trials + threads - 1) / threads;
    for (int w = 0; w < threads; ++w) {
      const int64_t b = std::min<int64_t>(plan.trials, w * chunk);
      const int64_t e = std::min<int64_t>(plan.trials, b + chunk);
      workers.emplace_back([&, w, b, e] {
        partial[static_cast<size_t>(w)] = CountOnes(decider, plan, b, e);
      });
    }
    for (std::thread& t : workers) t.join();
    for (int64_t p : partial) ones += p;
  }

  const DeciderContext& ctx = decider.context();
  ResultRow row;
  row.query_id = plan.query_id;
  row.decider = DeciderKindName(decider.kind());
  if (plan.tau.is_percent()) row.tau_pct = plan.tau.value();
  row.tau = ctx.tau;
  row.epsilon = ctx.epsilon.epsilon();
  row.trials = plan.trials;
  row.correct_outcome = ctx.correct_outcome();
  row.d_q = ctx.d_q();
  row.seed = plan.seed;
  row.ones = ones;
  const double n = static_cast<double>(plan.trials);
  if (row.correct_outcome == 1) {
    row.false_negative = static_cast<double>(plan.trials - ones) / n;
  } else {
    row.false_positive = static_cast<double>(ones) / n;
  }
  row.error = row.false_positive + row.false_negative;
  row.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return row;
}

absl::StatusOr<ResultRow> RunTrials(const TrialPlan& plan) {
  if (plan.trials < 1) {
    return absl::InvalidArgumentError("a trial plan needs at least one trial");
  }
  DeciderRequest req;
  req.query = plan.query;
  req.data = plan.data;
  req.synthetic = plan.synthetic;
  req.tau = plan.tau;
  req.epsilon = plan.epsilon;
  req.options = plan.options;
  ASSIGN_OR_RETURN(std::unique_ptr<Decider> decider,
                   CreateDecider(plan.decider, req));
  if (!decider->context().q_data.has_value()) {
    return absl::FailedPreconditionError(
        "error rates need q(D), which is undefined for MEDIAN over empty "
        "support");
  }
  return RunTrialsWithDecider(*decider, plan);
}

}  // namespace pqdecide
