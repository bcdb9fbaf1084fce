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

#include "pqdecide/dp/noise.h"

#include <algorithm>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace pqdecide {

absl::StatusOr<PrivacyBudget> PrivacyBudget::Create(double epsilon) {
  if (!std::isfinite(epsilon) || epsilon <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be finite and positive, got ", epsilon));
  }
  return PrivacyBudget(epsilon);
}

size_t NoiseLedger::CountWithTag(std::string_view tag) const {
  return static_cast<size_t>(
      std::count_if(events_.begin(), events_.end(),
                    [&](const NoiseEvent& e) { return e.tag == tag; }));
}

double LaplaceFromUniform(double u, double scale) {
  const double v = u - 0.5;
  // log1p keeps precision for u near 0.5; |v| < 0.5 so the argument is > -1.
  const double magnitude = -scale * std::log1p(-2.0 * std::fabs(v));
  return v < 0 ? -magnitude : magnitude;
}

double NoiseSource::Laplace(double scale, std::string_view tag) {
  if (ledger_ != nullptr) {
    ledger_->Record(NoiseEventKind::kLaplace, tag, scale);
  }
  if (mode_ == NoiseMode::kZeroNoise) return 0.0;
  return LaplaceFromUniform(rng_.Uniform(), scale * scale_factor_);
}

double NoiseSource::Gumbel() {
  if (mode_ == NoiseMode::kZeroNoise) return 0.0;
  return -std::log(-std::log(rng_.Uniform()));
}

absl::StatusOr<double> LaplaceSample(double scale, RandomSource& rng,
                                     NoiseMode mode) {
  if (!std::isfinite(scale) || scale <= 0) {
    return absl::InvalidArgumentError(
        absl::StrCat("Laplace scale must be positive, got ", scale));
  }
  if (mode == NoiseMode::kZeroNoise) return 0.0;
  return LaplaceFromUniform(rng.Uniform(), scale);
}

double LaplaceTail(double t, double scale) {
  return 0.5 * std::exp(-t / scale);
}

double LaplaceCdf(double x, double scale) {
  if (x < 0) return 0.5 * std::exp(x / scale);
  return 1.0 - 0.5 * std::exp(-x / scale);
}

double LaplaceIntervalProbability(double a, double b, double scale) {
  if (b <= a) return 0.0;
  if (a >= 0) return 0.5 * (std::exp(-a / scale) - std::exp(-b / scale));
  if (b <= 0) return 0.5 * (std::exp(b / scale) - std::exp(a / scale));
  return 1.0 - 0.5 * std::exp(a / scale) - 0.5 * std::exp(-b / scale);
}

}  // namespace pqdecide
