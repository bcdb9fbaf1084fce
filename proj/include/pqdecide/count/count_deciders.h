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

#ifndef PQDECIDE_COUNT_COUNT_DECIDERS_H_
#define PQDECIDE_COUNT_COUNT_DECIDERS_H_

#include <memory>

#include "absl/status/statusor.h"
#include "pqdecide/decider/decider.h"

namespace pqdecide {

// 1 for the correct outcome, 0 for the other one. Sensitivity 1.
double ScoreUNaive(double q_data, double q_synthetic, double tau, int o);

// Piecewise-linear score with sensitivity 1/(2 tau). With l = q_s - tau and
// r = q_s + tau:
//   q_data outside (l - tau, r + tau):  (o=0, o=1) -> (1, 0)
//   q_data in (l - tau, q_s]:           o=1 -> (q_data - (l - tau)) / (2 tau)
//   q_data in (q_s, r + tau):           o=1 -> 1 - (q_data - q_s) / (2 tau)
// and the o=0 score is one minus the o=1 score on both ramps.
double ScoreUPrime(double q_data, double q_synthetic, double tau, int o);

// Exact error of the Laplace decider with noise scale `scale`: the Laplace
// probability mass that lands on the wrong side of the open interval.
ErrorReport LaplaceDeciderErrorProfile(double q_data, double q_synthetic,
                                       double tau, double scale);

// Laplace count decider, scale 1/eps.
ErrorReport LmCountErrorProfile(double q_data, double q_synthetic, double tau,
                                PrivacyBudget eps);

// Two-outcome EM with ScoreUNaive; the error is 1 / (1 + e^{eps/2}).
ErrorReport EmCountNaiveErrorProfile(double q_data, double q_synthetic,
                                     double tau, PrivacyBudget eps);

// Two-outcome EM with ScoreUPrime.
ErrorReport EmCountErrorProfile(double q_data, double q_synthetic, double tau,
                                PrivacyBudget eps);

// Effectiveness bounds. Both require 0 < delta < 1 and return 0 once
// delta >= 0.5, where the logarithm would go nonpositive.
//   lm:  ln(1 / (2 delta)) / eps
//   em:  ln((1 - delta) / delta) / eps
absl::StatusOr<double> TauMinLmCount(double eps, double delta);
absl::StatusOr<double> TauMinEmCount(double eps, double delta);

absl::StatusOr<std::unique_ptr<Decider>> CreateCountDecider(
    DeciderKind kind, const DeciderRequest& req, DeciderContext ctx);

absl::StatusOr<Outcome> LmCountDecide(const DeciderRequest& req,
                                      NoiseSource& noise);
absl::StatusOr<Outcome> EmCountNaiveDecide(const DeciderRequest& req,
                                           NoiseSource& noise);
absl::StatusOr<Outcome> EmCountDecide(const DeciderRequest& req,
                                      NoiseSource& noise);

}  // namespace pqdecide

#endif  // PQDECIDE_COUNT_COUNT_DECIDERS_H_
