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

#include "pqdecide/median/median_deciders.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "pqdecide/dp/exponential.h"
#include "pqdecide/relational/evaluate.h"
#include "pqdecide/status_macros.h"

namespace pqdecide {

absl::StatusOr<MedianScoreTable> MedianScoreTable::Build(
    const AggregateQuery& q, const Table& t) {
  if (q.kind() != AggregateKind::kMedian) {
    return absl::InvalidArgumentError("score table needs a MEDIAN query");
  }
  const IntegerRange dom =
      t.schema().attribute(q.attribute()).domain.integer();
  if (dom.size() <= 0 || dom.size() > kMaxDomainSize) {
    return absl::ResourceExhaustedError(
        absl::StrCat("median domain of size ", dom.size(),
                     " exceeds the limit of ", kMaxDomainSize));
  }
  const size_t size = static_cast<size_t>(dom.size());
  std::vector<int64_t> hist(size, 0);
  const std::vector<uint8_t> mask = PredicateMask(q.predicate(), t);
  std::span<const int64_t> col = t.column(q.attribute());
  int64_t matching = 0;
  for (size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) {
      ++hist[static_cast<size_t>(col[i] - dom.min)];
      ++matching;
    }
  }
  std::vector<double> scores(size);
  const double half = static_cast<double>(matching) / 2.0;
  int64_t rank = 0;  // rows strictly below the current element
  for (size_t i = 0; i < size; ++i) {
    scores[i] = -std::fabs(static_cast<double>(rank) - half);
    rank += hist[i];
  }
  return MedianScoreTable(dom.min, std::move(scores), matching);
}

double EmMedianEstimator::Estimate(NoiseSource& noise) const {
  // The table is non-empty by construction, so the draw cannot fail.
  const size_t i =
      *EmOverDomain(table_->scores(), eps_, 1.0, noise, "em_med");
  return static_cast<double>(table_->element(i));
}

absl::StatusOr<int64_t> EmMedEstimate(const AggregateQuery& q, const Table& t,
                                      PrivacyBudget eps, NoiseSource& noise) {
  ASSIGN_OR_RETURN(MedianScoreTable table, MedianScoreTable::Build(q, t));
  if (table.matching() == 0) {
    return absl::FailedPreconditionError(
        "MEDIAN over empty support: no rows satisfy the predicate");
  }
  ASSIGN_OR_RETURN(size_t i,
                   EmOverDomain(table.scores(), eps, 1.0, noise, "em_med"));
  return table.element(i);
}

IntervalMass EmMedIntervalMass(const MedianScoreTable& table,
                               PrivacyBudget eps, const Interval& interval) {
  const double coef = eps.epsilon() / 2.0;
  std::vector<double> in_logits;
  std::vector<double> out_logits;
  for (size_t i = 0; i < table.size(); ++i) {
    const double logit = coef * table.scores()[i];
    if (interval.ContainsStrict(static_cast<double>(table.element(i)))) {
      in_logits.push_back(logit);
    } else {
      out_logits.push_back(logit);
    }
  }
  const double log_in = LogSumExp(in_logits);
  const double log_out = LogSumExp(out_logits);
  // Normalise against the larger part to keep both exponents <= 0.
  const double m = std::max(log_in, log_out);
  const double log_z = m + std::log(std::exp(log_in - m) + std::exp(log_out - m));
  return {std::exp(log_in - log_z), std::exp(log_out - log_z)};
}

absl::StatusOr<ErrorReport> EmMedErrorProfile(const AggregateQuery& q,
                                              const Table& t,
                                              double q_synthetic, double tau,
                                              PrivacyBudget eps) {
  if (!(tau > 0)) return absl::InvalidArgumentError("tau must be positive");
  ASSIGN_OR_RETURN(int64_t q_data, Answer(q, t));
  ASSIGN_OR_RETURN(MedianScoreTable table, MedianScoreTable::Build(q, t));
  const IntervalMass mass =
      EmMedIntervalMass(table, eps, Interval::Around(q_synthetic, tau));
  ErrorReport r = MakeErrorReport(static_cast<double>(q_data), q_synthetic,
                                  tau, 0, ErrorKind::kClosedForm);
  r.error_value = r.correct_outcome == 1 ? mass.outside : mass.inside;
  return r;
}

namespace {

// Integer cut points for real endpoints, kept well inside int64.
int64_t FloorToInt(double v) {
  return static_cast<int64_t>(std::clamp(std::floor(v), -4e18, 4e18));
}
int64_t CeilToInt(double v) {
  return static_cast<int64_t>(std::clamp(std::ceil(v), -4e18, 4e18));
}

}  // namespace

HistMedState ComputeHistMedState(const AggregateQuery& q, const Table& t,
                                 const Interval& interval) {
  HistMedState s;
  s.matching = MatchingCount(q.predicate(), t);
  s.q1 = CountMatchingInRange(t, q.predicate(), q.attribute(), INT64_MIN,
                              FloorToInt(interval.l));
  s.q2 = CountMatchingInRange(t, q.predicate(), q.attribute(),
                              CeilToInt(interval.r), INT64_MAX);
  return s;
}

Outcome HistMedDecideFromState(const HistMedState& s, PrivacyBudget eps,
                               NoiseSource& noise) {
  const double scale = 2.0 / eps.epsilon();
  const double n_noisy =
      static_cast<double>(s.matching) + noise.Laplace(scale, "hist_count");
  const double nu1 = noise.Laplace(scale, "hist_q1");
  const double nu2 = noise.Laplace(scale, "hist_q2");
  const double m = std::ceil(n_noisy / 2.0);
  if (static_cast<double>(s.q1) + nu1 >= m) return Outcome::Unmet();
  if (static_cast<double>(s.q2) + nu2 >= m) return Outcome::Unmet();
  return Outcome::Satisfied();
}

namespace {

class EmMedDecider : public BasicDecider {
 public:
  EmMedDecider(DeciderContext ctx,
               std::shared_ptr<const MedianScoreTable> table)
      : BasicDecider(DeciderKind::kEmMed, ctx,
                     std::make_unique<EmMedianEstimator>(table, ctx.epsilon)),
        table_(std::move(table)) {}

  std::optional<ErrorReport> ClosedFormError() const override {
    const IntervalMass mass =
        EmMedIntervalMass(*table_, ctx_.epsilon, ctx_.interval);
    ErrorReport r = MakeErrorReport(*ctx_.q_data, ctx_.q_synthetic, ctx_.tau,
                                    0, ErrorKind::kClosedForm);
    r.error_value = r.correct_outcome == 1 ? mass.outside : mass.inside;
    return r;
  }

 private:
  std::shared_ptr<const MedianScoreTable> table_;
};

class HistMedDecider : public Decider {
 public:
  HistMedDecider(DeciderContext ctx, HistMedState state)
      : Decider(std::move(ctx)), state_(state) {}

  DeciderKind kind() const override { return DeciderKind::kHistMed; }
  Outcome Decide(NoiseSource& noise) const override {
    return HistMedDecideFromState(state_, ctx_.epsilon, noise);
  }

 private:
  HistMedState state_;
};

}  // namespace

absl::StatusOr<std::unique_ptr<Decider>> CreateMedianDecider(
    DeciderKind kind, const DeciderRequest& req, DeciderContext ctx) {
  switch (kind) {
    case DeciderKind::kEmMed: {
      if (!ctx.q_data.has_value()) {
        return absl::FailedPreconditionError(
            "MEDIAN over empty support on the private table");
      }
      ASSIGN_OR_RETURN(MedianScoreTable table,
                       MedianScoreTable::Build(*req.query, *req.data));
      auto shared = std::make_shared<const MedianScoreTable>(std::move(table));
      return std::unique_ptr<Decider>(
          new EmMedDecider(std::move(ctx), std::move(shared)));
    }
    case DeciderKind::kHistMed: {
      HistMedState s = ComputeHistMedState(*req.query, *req.data, ctx.interval);
      return std::unique_ptr<Decider>(new HistMedDecider(std::move(ctx), s));
    }
    default:
      return absl::InvalidArgumentError("not a MEDIAN decider");
  }
}

absl::StatusOr<Outcome> EmMedDecide(const DeciderRequest& req,
                                    NoiseSource& noise) {
  return DecideOnce(DeciderKind::kEmMed, req, noise);
}

absl::StatusOr<Outcome> HistMedDecide(const DeciderRequest& req,
                                      NoiseSource& noise) {
  return DecideOnce(DeciderKind::kHistMed, req, noise);
}

}  // namespace pqdecide
