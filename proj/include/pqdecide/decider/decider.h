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

#ifndef PQDECIDE_DECIDER_DECIDER_H_
#define PQDECIDE_DECIDER_DECIDER_H_

#include <cmath>
#include <memory>
#include <optional>

#include "absl/status/statusor.h"
#include "pqdecide/decider/types.h"
#include "pqdecide/dp/noise.h"

namespace pqdecide {

// Public, non-private facts about a request, resolved once.
struct DeciderContext {
  double q_synthetic = 0;
  double tau = 0;
  Interval interval;
  PrivacyBudget epsilon;
  // Exact q(D). Absent only when it is undefined (MEDIAN over empty support).
  // Held for error accounting; deciders must not branch on it directly.
  std::optional<double> q_data;

  double d_q() const { return q_data ? std::abs(*q_data - q_synthetic) : 0; }
  int correct_outcome() const { return q_data && d_q() < tau ? 1 : 0; }
};

// Resolves q(D_s), tau and the interval for `req`, and q(D) when defined.
absl::StatusOr<DeciderContext> ResolveContext(const DeciderRequest& req);

// A decider for one request. Construction does all the non-private work
// (scans, truncated sums, score tables); Decide() only draws noise, so
// Monte-Carlo loops call it repeatedly. Decide() is const and safe to call
// concurrently with distinct NoiseSources.
class Decider {
 public:
  explicit Decider(DeciderContext ctx) : ctx_(std::move(ctx)) {}
  virtual ~Decider() = default;

  virtual DeciderKind kind() const = 0;
  virtual Outcome Decide(NoiseSource& noise) const = 0;

  // Exact error probability when this decider has a closed form.
  virtual std::optional<ErrorReport> ClosedFormError() const {
    return std::nullopt;
  }

  const DeciderContext& context() const { return ctx_; }

 protected:
  DeciderContext ctx_;
};

// A randomized estimate of q(D) whose privacy cost is the request's epsilon.
class NoisyEstimator {
 public:
  virtual ~NoisyEstimator() = default;
  virtual double Estimate(NoiseSource& noise) const = 0;
};

// o = 1 exactly when the estimate falls strictly inside (l, r).
Outcome BasicDecide(const Interval& interval, const NoisyEstimator& estimator,
                    NoiseSource& noise);

// Standalone form: resolves the interval from `req` and runs BasicDecide.
absl::StatusOr<Outcome> BasicDecide(const DeciderRequest& req,
                                    const NoisyEstimator& estimator,
                                    NoiseSource& noise);

// q(D) + Lap(scale).
class LaplaceEstimator : public NoisyEstimator {
 public:
  LaplaceEstimator(double value, double scale)
      : value_(value), scale_(scale) {}
  double Estimate(NoiseSource& noise) const override {
    return value_ + noise.Laplace(scale_, "lm");
  }

 private:
  double value_;
  double scale_;
};

// Decider that wraps a NoisyEstimator.
class BasicDecider : public Decider {
 public:
  BasicDecider(DeciderKind kind, DeciderContext ctx,
               std::unique_ptr<NoisyEstimator> estimator)
      : Decider(std::move(ctx)), kind_(kind), estimator_(std::move(estimator)) {}

  DeciderKind kind() const override { return kind_; }
  Outcome Decide(NoiseSource& noise) const override {
    return BasicDecide(ctx_.interval, *estimator_, noise);
  }
  const NoisyEstimator& estimator() const { return *estimator_; }

 private:
  DeciderKind kind_;
  std::unique_ptr<NoisyEstimator> estimator_;
};

// Builds any decider kind; fails if the kind does not match the query's
// aggregate or the options are invalid for it.
absl::StatusOr<std::unique_ptr<Decider>> CreateDecider(
    DeciderKind kind, const DeciderRequest& req);

// CreateDecider followed by a single Decide().
absl::StatusOr<Outcome> DecideOnce(DeciderKind kind, const DeciderRequest& req,
                                   NoiseSource& noise);

}  // namespace pqdecide

#endif  // PQDECIDE_DECIDER_DECIDER_H_
