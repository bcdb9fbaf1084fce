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

#ifndef PQDECIDE_SUM_SUM_DECIDERS_H_
#define PQDECIDE_SUM_SUM_DECIDERS_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "absl/status/statusor.h"
#include "pqdecide/decider/decider.h"

namespace pqdecide {

// Truncation thresholds t_j = 2^j for j = 1..L with L = ceil(log2 gs), so the
// last threshold is the smallest power of two >= gs. Needs gs >= 2.
class TruncationLadder {
 public:
  static absl::StatusOr<TruncationLadder> ForSensitivity(int64_t gs);

  int64_t gs() const { return gs_; }
  int length() const { return length_; }
  // j is 1-based, as in t_j.
  int64_t threshold(int j) const { return int64_t{1} << j; }

 private:
  TruncationLadder(int64_t gs, int length) : gs_(gs), length_(length) {}
  int64_t gs_;
  int length_;
};

// Sensitivity bound used for a SUM request: options.gs if given, else the
// maximum of the aggregate attribute's domain. Fails if below `min_gs`.
absl::StatusOr<int64_t> ResolveSumSensitivity(const DeciderRequest& req,
                                              int64_t min_gs);

// q(D, t_j) for j = 1..L, plus q(D, 0) at index 0.
absl::StatusOr<std::vector<int64_t>> TruncatedSumsOnLadder(
    const AggregateQuery& q, const Table& t, const TruncationLadder& ladder);

// Noisy truncated-sum estimator:
//   est_j = q(D, t_j) + Lap(t_j L / eps) - (t_j L / eps) ln(L / beta)
//   est   = max(max_j est_j, q(D, 0))
// The Laplace term vanishes in kZeroNoise mode; the shift does not.
class R2TEstimator : public NoisyEstimator {
 public:
  R2TEstimator(std::vector<int64_t> truncated_sums, TruncationLadder ladder,
               PrivacyBudget eps, double beta);
  double Estimate(NoiseSource& noise) const override;

 private:
  std::vector<int64_t> sums_;
  TruncationLadder ladder_;
  PrivacyBudget eps_;
  double beta_;
};

// Standalone estimator run. Requires a SUM query, gs >= 2, 0 < beta < 1.
absl::StatusOr<double> R2TEstimate(const AggregateQuery& q, const Table& t,
                                   int64_t gs, PrivacyBudget eps, double beta,
                                   NoiseSource& noise);

// Ladder index in 1..L at which the matching count below 2^j first clears a
// noisy theta fraction of the noisy matching count. Uses eps_prime / 3 for
// each of the count estimate, the threshold noise and the per-query noise.
// `counts_below[j]` is #{matching rows with value <= 2^j}, index 0 unused;
// `matching` is n'.
int PrivateBoundDsIndex(const std::vector<int64_t>& counts_below,
                        int64_t matching, const TruncationLadder& ladder,
                        PrivacyBudget eps_prime, double theta,
                        NoiseSource& noise);

absl::StatusOr<int> PrivateBoundDs(const AggregateQuery& q, const Table& t,
                                   PrivacyBudget eps_prime, double theta,
                                   int64_t gs, NoiseSource& noise);

// Brute-force check of the truncation properties on `t`: q(D, t) is
// nondecreasing in t, never exceeds q(D), equals q(D) for every
// t >= DS_{q,D}, and changes by at most t when one row is removed.
absl::StatusOr<bool> VerifyTruncationProperties(const AggregateQuery& q,
                                                const Table& t, int64_t gs);

// Effectiveness bounds, both 0 once delta >= 0.5 (lm) or ds = 0 (r2t).
//   lm:   gs ln(1 / (2 delta)) / eps
//   r2t:  4 log2(gs) ln(log2(gs) / delta) ds / eps
absl::StatusOr<double> TauMinLmSum(double gs, double eps, double delta);
absl::StatusOr<double> TauMinR2tSum(double gs, double ds, double eps,
                                    double delta);

// Laplace sum decider error, scale gs / eps.
ErrorReport LmSumErrorProfile(double q_data, double q_synthetic, double tau,
                              double gs, PrivacyBudget eps);

absl::StatusOr<std::unique_ptr<Decider>> CreateSumDecider(
    DeciderKind kind, const DeciderRequest& req, DeciderContext ctx);

absl::StatusOr<Outcome> LmSumDecide(const DeciderRequest& req,
                                    NoiseSource& noise);
absl::StatusOr<Outcome> R2tSumDecide(const DeciderRequest& req,
                                     NoiseSource& noise);
absl::StatusOr<Outcome> SvtSumDecide(const DeciderRequest& req,
                                     NoiseSource& noise);

}  // namespace pqdecide

#endif  // PQDECIDE_SUM_SUM_DECIDERS_H_
