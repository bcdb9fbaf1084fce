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

#include "pqdecide/count/count_deciders.h"

#include <cmath>

#include "absl/status/status.h"
#include "pqdecide/dp/exponential.h"
#include "pqdecide/status_macros.h"

namespace pqdecide {

double ScoreUNaive(double q_data, double q_synthetic, double tau, int o) {
  const int correct = std::fabs(q_data - q_synthetic) < tau ? 1 : 0;
  return o == correct ? 1.0 : 0.0;
}

double ScoreUPrime(double q_data, double q_synthetic, double tau, int o) {
  const double l = q_synthetic - tau;
  const double r = q_synthetic + tau;
  double one;  // score of o = 1
  if (q_data <= l - tau || q_data >= r + tau) {
    one = 0.0;
  } else if (q_data <= q_synthetic) {
    one = (q_data - (l - tau)) / (2 * tau);
  } else {
    one = 1.0 - (q_data - q_synthetic) / (2 * tau);
  }
  return o == 1 ? one : 1.0 - one;
}

ErrorReport LaplaceDeciderErrorProfile(double q_data, double q_synthetic,
                                       double tau, double scale) {
  const Interval in = Interval::Around(q_synthetic, tau);
  double error;
  if (in.ContainsStrict(q_data)) {
    // Mass at or beyond either endpoint.
    error = 0.5 * std::exp(-(q_data - in.l) / scale) +
            0.5 * std::exp(-(in.r - q_data) / scale);
  } else {
    error = LaplaceIntervalProbability(in.l - q_data, in.r - q_data, scale);
  }
  return MakeErrorReport(q_data, q_synthetic, tau, error,
                         ErrorKind::kClosedForm);
}

ErrorReport LmCountErrorProfile(double q_data, double q_synthetic, double tau,
                                PrivacyBudget eps) {
  return LaplaceDeciderErrorProfile(q_data, q_synthetic, tau,
                                    1.0 / eps.epsilon());
}

namespace {

ErrorReport TwoOutcomeErrorProfile(double q_data, double q_synthetic,
                                   double tau, double s0, double s1,
                                   PrivacyBudget eps, double delta_u) {
  const double p1 = TwoOutcomeProbabilityOfOne(s0, s1, eps, delta_u);
  ErrorReport r =
      MakeErrorReport(q_data, q_synthetic, tau, 0, ErrorKind::kClosedForm);
  // 1 - p1 computed as the probability of 0 directly to avoid cancellation.
  r.error_value = r.correct_outcome == 1
                      ? TwoOutcomeProbabilityOfOne(s1, s0, eps, delta_u)
                      : p1;
  return r;
}

}  // namespace

ErrorReport EmCountNaiveErrorProfile(double q_data, double q_synthetic,
                                     double tau, PrivacyBudget eps) {
  return TwoOutcomeErrorProfile(
      q_data, q_synthetic, tau, ScoreUNaive(q_data, q_synthetic, tau, 0),
      ScoreUNaive(q_data, q_synthetic, tau, 1), eps, 1.0);
}

ErrorReport EmCountErrorProfile(double q_data, double q_synthetic, double tau,
                                PrivacyBudget eps) {
  return TwoOutcomeErrorProfile(
      q_data, q_synthetic, tau, ScoreUPrime(q_data, q_synthetic, tau, 0),
      ScoreUPrime(q_data, q_synthetic, tau, 1), eps, 1.0 / (2 * tau));
}

absl::StatusOr<double> TauMinLmCount(double eps, double delta) {
  RETURN_IF_ERROR(CheckEpsilonDelta(eps, delta));
  if (delta >= 0.5) return 0.0;
  return std::log(1.0 / (2 * delta)) / eps;
}

absl::StatusOr<double> TauMinEmCount(double eps, double delta) {
  RETURN_IF_ERROR(CheckEpsilonDelta(eps, delta));
  if (delta >= 0.5) return 0.0;
  return std::log((1 - delta) / delta) / eps;
}

namespace {

class TwoOutcomeCountDecider : public Decider {
 public:
  TwoOutcomeCountDecider(DeciderKind kind, DeciderContext ctx, double s0,
                         double s1, double delta_u)
      : Decider(std::move(ctx)),
        kind_(kind),
        s0_(s0),
        s1_(s1),
        delta_u_(delta_u) {}

  DeciderKind kind() const override { return kind_; }

  Outcome Decide(NoiseSource& noise) const override {
    return {TwoOutcomeEm(s0_, s1_, ctx_.epsilon, delta_u_, noise,
                         DeciderKindName(kind_))};
  }

  std::optional<ErrorReport> ClosedFormError() const override {
    const double q = *ctx_.q_data;
    return kind_ == DeciderKind::kEmCount
               ? EmCountErrorProfile(q, ctx_.q_synthetic, ctx_.tau,
                                     ctx_.epsilon)
               : EmCountNaiveErrorProfile(q, ctx_.q_synthetic, ctx_.tau,
                                          ctx_.epsilon);
  }

 private:
  DeciderKind kind_;
  double s0_;
  double s1_;
  double delta_u_;
};

class LmCountDecider : public BasicDecider {
 public:
  explicit LmCountDecider(DeciderContext ctx)
      : BasicDecider(DeciderKind::kLmCount, ctx,
                     std::make_unique<LaplaceEstimator>(
                         *ctx.q_data, 1.0 / ctx.epsilon.epsilon())) {}

  std::optional<ErrorReport> ClosedFormError() const override {
    return LmCountErrorProfile(*ctx_.q_data, ctx_.q_synthetic, ctx_.tau,
                               ctx_.epsilon);
  }
};

}  // namespace

absl::StatusOr<std::unique_ptr<Decider>> CreateCountDecider(
    DeciderKind kind, const DeciderRequest& req, DeciderContext ctx) {
  (void)req;
  const double q = *ctx.q_data;  // COUNT is always defined
  switch (kind) {
    case DeciderKind::kLmCount:
      return std::unique_ptr<Decider>(new LmCountDecider(std::move(ctx)));
    case DeciderKind::kEmCountNaive: {
      const double s0 = ScoreUNaive(q, ctx.q_synthetic, ctx.tau, 0);
      const double s1 = ScoreUNaive(q, ctx.q_synthetic, ctx.tau, 1);
      return std::unique_ptr<Decider>(
          new TwoOutcomeCountDecider(kind, std::move(ctx), s0, s1, 1.0));
    }
    case DeciderKind::kEmCount: {
      const double s0 = ScoreUPrime(q, ctx.q_synthetic, ctx.tau, 0);
      const double s1 = ScoreUPrime(q, ctx.q_synthetic, ctx.tau, 1);
      const double delta_u = 1.0 / (2 * ctx.tau);
      return std::unique_ptr<Decider>(
          new TwoOutcomeCountDecider(kind, std::move(ctx), s0, s1, delta_u));
    }
    default:
      return absl::InvalidArgumentError("not a COUNT decider");
  }
}

absl::StatusOr<Outcome> LmCountDecide(const DeciderRequest& req,
                                      NoiseSource& noise) {
  return DecideOnce(DeciderKind::kLmCount, req, noise);
}

absl::StatusOr<Outcome> EmCountNaiveDecide(const DeciderRequest& req,
                                           NoiseSource& noise) {
  return DecideOnce(DeciderKind::kEmCountNaive, req, noise);
}

absl::StatusOr<Outcome> EmCountDecide(const DeciderRequest& req,
                                      NoiseSource& noise) {
  return DecideOnce(DeciderKind::kEmCount, req, noise);
}

}  // namespace pqdecide
