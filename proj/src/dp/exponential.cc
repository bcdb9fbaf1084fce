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

#include "pqdecide/dp/exponential.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"

namespace pqdecide {

double Logistic(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double LogSumExp(std::span<const double> x) {
  if (x.empty()) return -std::numeric_limits<double>::infinity();
  const double m = *std::max_element(x.begin(), x.end());
  if (!std::isfinite(m)) return m;
  double acc = 0;
  for (double v : x) acc += std::exp(v - m);
  return m + std::log(acc);
}

double TwoOutcomeProbabilityOfOne(double score0, double score1,
                                  PrivacyBudget eps, double delta_u) {
  return Logistic(eps.epsilon() * (score1 - score0) / (2.0 * delta_u));
}

int TwoOutcomeEm(double score0, double score1, PrivacyBudget eps,
                 double delta_u, NoiseSource& noise, std::string_view tag) {
  noise.RecordExponential(tag, eps.epsilon());
  if (noise.mode() == NoiseMode::kZeroNoise) return score1 > score0 ? 1 : 0;
  const double x = eps.epsilon() * (score1 - score0) /
                   (2.0 * delta_u * noise.noise_scale_factor());
  return noise.Uniform() < Logistic(x) ? 1 : 0;
}

absl::StatusOr<size_t> EmOverDomain(std::span<const double> scores,
                                    PrivacyBudget eps, double delta_u,
                                    NoiseSource& noise, std::string_view tag) {
  if (scores.empty()) {
    return absl::InvalidArgumentError(
        "exponential mechanism needs at least one outcome");
  }
  noise.RecordExponential(tag, eps.epsilon());
  if (noise.mode() == NoiseMode::kZeroNoise) {
    return static_cast<size_t>(
        std::max_element(scores.begin(), scores.end()) - scores.begin());
  }
  const double coef =
      eps.epsilon() / (2.0 * delta_u * noise.noise_scale_factor());
  size_t best = 0;
  double best_key = -std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < scores.size(); ++i) {
    const double key = coef * scores[i] + noise.Gumbel();
    if (key > best_key) {
      best_key = key;
      best = i;
    }
  }
  return best;
}

std::vector<double> EmProbabilities(std::span<const double> scores,
                                    PrivacyBudget eps, double delta_u) {
  std::vector<double> logits(scores.size());
  const double coef = eps.epsilon() / (2.0 * delta_u);
  for (size_t i = 0; i < scores.size(); ++i) logits[i] = coef * scores[i];
  const double z = LogSumExp(logits);
  for (double& v : logits) v = std::exp(v - z);
  return logits;
}

}  // namespace pqdecide
