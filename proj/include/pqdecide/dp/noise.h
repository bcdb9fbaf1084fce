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

#ifndef PQDECIDE_DP_NOISE_H_
#define PQDECIDE_DP_NOISE_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "pqdecide/dp/random.h"

namespace pqdecide {

// kZeroNoise makes every Laplace draw exactly 0 and every exponential
// mechanism pick its (lowest-index) best-scoring outcome, so a randomized
// decider collapses to a deterministic function of its inputs.
enum class NoiseMode { kLive, kZeroNoise };

class PrivacyBudget {
 public:
  // epsilon = 1.
  PrivacyBudget() : epsilon_(1.0) {}
  // Fails unless epsilon is finite and positive.
  static absl::StatusOr<PrivacyBudget> Create(double epsilon);

  double epsilon() const { return epsilon_; }

  // Budget scaled by `fraction`, e.g. Fraction(1.0 / 3).
  PrivacyBudget Fraction(double fraction) const {
    return PrivacyBudget(epsilon_ * fraction);
  }

 private:
  explicit PrivacyBudget(double epsilon) : epsilon_(epsilon) {}
  double epsilon_;
};

enum class NoiseEventKind { kLaplace, kExponential };

// One randomized step. For Laplace draws `parameter` is the nominal scale b;
// for exponential mechanism invocations it is the epsilon charged.
struct NoiseEvent {
  NoiseEventKind kind;
  std::string tag;
  double parameter;
};

// Records randomized steps so tests can audit how a decider spends its
// budget. Owned by the caller, attached per invocation.
class NoiseLedger {
 public:
  void Record(NoiseEventKind kind, std::string_view tag, double parameter) {
    events_.push_back({kind, std::string(tag), parameter});
  }
  const std::vector<NoiseEvent>& events() const { return events_; }
  size_t CountWithTag(std::string_view tag) const;
  void Clear() { events_.clear(); }

 private:
  std::vector<NoiseEvent> events_;
};

// The randomness handle every decider draws from.
class NoiseSource {
 public:
  explicit NoiseSource(RandomSource rng, NoiseMode mode = NoiseMode::kLive)
      : rng_(rng), mode_(mode) {}

  NoiseMode mode() const { return mode_; }
  RandomSource& rng() { return rng_; }

  void set_ledger(NoiseLedger* ledger) { ledger_ = ledger; }
  NoiseLedger* ledger() const { return ledger_; }

  // Fault injection for auditing tools: every Laplace scale is multiplied by
  // `factor` and every exponential mechanism exponent divided by it. The
  // ledger still records nominal parameters. Default 1.
  void set_noise_scale_factor(double factor) { scale_factor_ = factor; }
  double noise_scale_factor() const { return scale_factor_; }

  // Zero-mean Laplace draw with scale b > 0 (0 in kZeroNoise mode).
  double Laplace(double scale, std::string_view tag = "laplace");

  // Standard Gumbel draw (0 in kZeroNoise mode).
  double Gumbel();

  // Uniform on (0, 1), regardless of mode.
  double Uniform() { return rng_.Uniform(); }

  void RecordExponential(std::string_view tag, double epsilon) {
    if (ledger_ != nullptr) {
      ledger_->Record(NoiseEventKind::kExponential, tag, epsilon);
    }
  }

 private:
  RandomSource rng_;
  NoiseMode mode_;
  NoiseLedger* ledger_ = nullptr;
  double scale_factor_ = 1.0;
};

// Inverse-CDF transform of one uniform u in (0, 1) to Lap(scale).
double LaplaceFromUniform(double u, double scale);

// Stand-alone draw; fails on a non-positive or non-finite scale.
absl::StatusOr<double> LaplaceSample(double scale, RandomSource& rng,
                                     NoiseMode mode);

// One-sided tail Pr[X >= t] = exp(-t / scale) / 2 for X ~ Lap(scale), t >= 0.
double LaplaceTail(double t, double scale);

// CDF of Lap(scale) at x.
double LaplaceCdf(double x, double scale);

// Pr[a < X < b] for X ~ Lap(scale), evaluated without cancellation when both
// endpoints sit in the same tail. Returns 0 when b <= a.
double LaplaceIntervalProbability(double a, double b, double scale);

}  // namespace pqdecide

#endif  // PQDECIDE_DP_NOISE_H_
