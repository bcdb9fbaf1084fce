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

#ifndef PQDECIDE_DP_EXPONENTIAL_H_
#define PQDECIDE_DP_EXPONENTIAL_H_

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "pqdecide/dp/noise.h"

namespace pqdecide {

// Logistic function evaluated so that neither branch overflows.
double Logistic(double x);

// log(sum_i exp(x_i)); -inf for an empty span.
double LogSumExp(std::span<const double> x);

// Probability that the two-outcome exponential mechanism returns 1, i.e.
// Logistic(eps * (score1 - score0) / (2 * delta_u)).
double TwoOutcomeProbabilityOfOne(double score0, double score1,
                                  PrivacyBudget eps, double delta_u);

// Exponential mechanism over the outcomes {0, 1}. In kZeroNoise mode returns
// the better-scoring outcome, with ties going to 0. Consumes one uniform draw
// in live mode.
int TwoOutcomeEm(double score0, double score1, PrivacyBudget eps,
                 double delta_u, NoiseSource& noise,
                 std::string_view tag = "em2");

// Exponential mechanism over indices of `scores` via the Gumbel-max trick:
// argmax_i eps * scores[i] / (2 * delta_u) + G_i. kZeroNoise returns the
// lowest index with the maximum score. Fails on an empty list.
absl::StatusOr<size_t> EmOverDomain(std::span<const double> scores,
                                    PrivacyBudget eps, double delta_u,
                                    NoiseSource& noise,
                                    std::string_view tag = "em");

// Output distribution of EmOverDomain, normalised in log space.
std::vector<double> EmProbabilities(std::span<const double> scores,
                                    PrivacyBudget eps, double delta_u);

}  // namespace pqdecide

#endif  // PQDECIDE_DP_EXPONENTIAL_H_
