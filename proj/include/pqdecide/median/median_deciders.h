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

#ifndef PQDECIDE_MEDIAN_MEDIAN_DECIDERS_H_
#define PQDECIDE_MEDIAN_MEDIAN_DECIDERS_H_

#include <cstdint>
#include <memory>
#include <vector>

#include "absl/status/statusor.h"
#include "pqdecide/decider/decider.h"

namespace pqdecide {

// Rank scores u(e) = -|rank(e) - n'/2| for every element e of the aggregate
// attribute's domain, where rank(e) counts matching rows with value < e.
class MedianScoreTable {
 public:
  // Domains larger than this are rejected rather than materialized.
  static constexpr int64_t kMaxDomainSize = int64_t{1} << 24;

  static absl::StatusOr<MedianScoreTable> Build(const AggregateQuery& q,
                                                const Table& t);

  int64_t domain_min() const { return domain_min_; }
  size_t size() const { return scores_.size(); }
  int64_t element(size_t i) const {
    return domain_min_ + static_cast<int64_t>(i);
  }
  const std::vector<double>& scores() const { return scores_; }
  int64_t matching() const { return matching_; }

 private:
  MedianScoreTable(int64_t domain_min, std::vector<double> scores,
                   int64_t matching)
      : domain_min_(domain_min),
        scores_(std::move(scores)),
        matching_(matching) {}

  int64_t domain_min_;
  std::vector<double> scores_;
  int64_t matching_;
};

// Exponential-mechanism median over the domain with score sensitivity 1.
class EmMedianEstimator : public NoisyEstimator {
 public:
  EmMedianEstimator(std::shared_ptr<const MedianScoreTable> table,
                    PrivacyBudget eps)
      : table_(std::move(table)), eps_(eps) {}
  double Estimate(NoiseSource& noise) const override;

 private:
  std::shared_ptr<const MedianScoreTable> table_;
  PrivacyBudget eps_;
};

// Single draw. Fails on empty support.
absl::StatusOr<int64_t> EmMedEstimate(const AggregateQuery& q, const Table& t,
                                      PrivacyBudget eps, NoiseSource& noise);

// Output mass of the EM median inside the open interval and outside it.
// The two add to 1 up to rounding.
struct IntervalMass {
  double inside = 0;
  double outside = 0;
};
IntervalMass EmMedIntervalMass(const MedianScoreTable& table,
                               PrivacyBudget eps, const Interval& interval);

// Exact error of the EM median decider for a given q(D_s) and tau.
absl::StatusOr<ErrorReport> EmMedErrorProfile(const AggregateQuery& q,
                                              const Table& t,
                                              double q_synthetic, double tau,
                                              PrivacyBudget eps);

// Exact counts behind the histogram decider.
struct HistMedState {
  int64_t matching = 0;  // n'
  int64_t q1 = 0;        // matching rows with value <= l
  int64_t q2 = 0;        // matching rows with value >= r
};
HistMedState ComputeHistMedState(const AggregateQuery& q, const Table& t,
                                 const Interval& interval);

// n~ = n' + Lap(2/eps); returns 0 if q1 + Lap(2/eps) >= ceil(n~/2), else 0
// if q2 + Lap(2/eps) >= ceil(n~/2), else 1.
Outcome HistMedDecideFromState(const HistMedState& s, PrivacyBudget eps,
                               NoiseSource& noise);

absl::StatusOr<std::unique_ptr<Decider>> CreateMedianDecider(
    DeciderKind kind, const DeciderRequest& req, DeciderContext ctx);

absl::StatusOr<Outcome> EmMedDecide(const DeciderRequest& req,
                                    NoiseSource& noise);
absl::StatusOr<Outcome> HistMedDecide(const DeciderRequest& req,
                                      NoiseSource& noise);

}  // namespace pqdecide

#endif  // PQDECIDE_MEDIAN_MEDIAN_DECIDERS_H_
