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

#include "pqdecide/sum/sum_deciders.h"

#include <algorithm>
#include <bit>
#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "pqdecide/count/count_deciders.h"
#include "pqdecide/relational/evaluate.h"
#include "pqdecide/kernels/scan.h"
#include "pqdecide/status_macros.h"

namespace pqdecide {

absl::StatusOr<TruncationLadder> TruncationLadder::ForSensitivity(int64_t gs) {
  if (gs < 2) {
    return absl::InvalidArgumentError(absl::StrCat(
        "sensitivity bound must be at least 2 for a truncation ladder, got ",
        gs));
  }
  const int length = std::bit_width(static_cast<uint64_t>(gs - 1));
  if (length > 62) {
    return absl::InvalidArgumentError("sensitivity bound too large");
  }
  return TruncationLadder(gs, length);
}

absl::StatusOr<int64_t> ResolveSumSensitivity(const DeciderRequest& req,
                                              int64_t min_gs) {
  int64_t gs;
  if (req.options.gs.has_value()) {
    gs = *req.options.gs;
  } else {
    gs = req.data->schema()
             .attribute(req.query->attribute())
             .domain.integer()
             .max;
  }
  if (gs < min_gs) {
    return absl::InvalidArgumentError(absl::StrCat(
        "sensitivity bound gs = ", gs, " is below the minimum of ", min_gs,
        " for this decider"));
  }
  return gs;
}

absl::StatusOr<std::vector<int64_t>> TruncatedSumsOnLadder(
    const AggregateQuery& q, const Table& t, const TruncationLadder& ladder) {
  if (q.kind() != AggregateKind::kSum) {
    return absl::InvalidArgumentError("truncated sums need a SUM query");
  }
  const std::vector<uint8_t> mask = PredicateMask(q.predicate(), t);
  std::span<const int64_t> col = t.column(q.attribute());
  std::vector<int64_t> sums(static_cast<size_t>(ladder.length()) + 1);
  sums[0] = kernels::SumInRange(col, mask, INT64_MIN, 0);
  for (int j = 1; j <= ladder.length(); ++j) {
    sums[static_cast<size_t>(j)] =
        kernels::SumInRange(col, mask, INT64_MIN, ladder.threshold(j));
  }
  return sums;
}

R2TEstimator::R2TEstimator(std::vector<int64_t> truncated_sums,
                           TruncationLadder ladder, PrivacyBudget eps,
                           double beta)
    : sums_(std::move(truncated_sums)),
      ladder_(ladder),
      eps_(eps),
      beta_(beta) {}

double R2TEstimator::Estimate(NoiseSource& noise) const {
  const double L = ladder_.length();
  const double log_term = std::log(L / beta_);
  double best = static_cast<double>(sums_[0]);
  for (int j = 1; j <= ladder_.length(); ++j) {
    const double scale =
        static_cast<double>(ladder_.threshold(j)) * L / eps_.epsilon();
    const double est = static_cast<double>(sums_[static_cast<size_t>(j)]) +
                       noise.Laplace(scale, "r2t") - scale * log_term;
    best = std::max(best, est);
  }
  return best;
}

namespace {
absl::Status CheckBeta(double beta) {
  if (!(beta > 0 && beta < 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("beta must lie in (0, 1), got ", beta));
  }
  return absl::OkStatus();
}
absl::Status CheckTheta(double theta) {
  if (!(theta > 0 && theta < 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("theta must lie in (0, 1), got ", theta));
  }
  return absl::OkStatus();
}
}  // namespace

absl::StatusOr<double> R2TEstimate(const AggregateQuery& q, const Table& t,
                                   int64_t gs, PrivacyBudget eps, double beta,
                                   NoiseSource& noise) {
  RETURN_IF_ERROR(CheckBeta(beta));
  ASSIGN_OR_RETURN(TruncationLadder ladder,
                   TruncationLadder::ForSensitivity(gs));
  ASSIGN_OR_RETURN(std::vector<int64_t> sums,
                   TruncatedSumsOnLadder(q, t, ladder));
  return R2TEstimator(std::move(sums), ladder, eps, beta).Estimate(noise);
}

int PrivateBoundDsIndex(const std::vector<int64_t>& counts_below,
                        int64_t matching, const TruncationLadder& ladder,
                        PrivacyBudget eps_prime, double theta,
                        NoiseSource& noise) {
  const double scale = 3.0 / eps_prime.epsilon();
  const double n_noisy =
      static_cast<double>(matching) + noise.Laplace(scale, "ds_count");
  const double rho = noise.Laplace(scale, "ds_rho");
  for (int j = 1; j <= ladder.length(); ++j) {
    const double noisy = static_cast<double>(counts_below[static_cast<size_t>(j)]) +
                         noise.Laplace(scale, "ds_nu");
    if (noisy >= theta * n_noisy + rho) return j;
  }
  return ladder.length();
}

namespace {

std::vector<int64_t> CountsBelowOnLadder(const AggregateQuery& q,
                                         const Table& t,
                                         const TruncationLadder& ladder) {
  const std::vector<uint8_t> mask = PredicateMask(q.predicate(), t);
  std::span<const int64_t> col = t.column(q.attribute());
  std::vector<int64_t> counts(static_cast<size_t>(ladder.length()) + 1);
  counts[0] = kernels::CountInRange(col, mask, INT64_MIN, 0);
  for (int j = 1; j <= ladder.length(); ++j) {
    counts[static_cast<size_t>(j)] =
        kernels::CountInRange(col, mask, INT64_MIN, ladder.threshold(j));
  }
  return counts;
}

}  // namespace

absl::StatusOr<int> PrivateBoundDs(const AggregateQuery& q, const Table& t,
                                   PrivacyBudget eps_prime, double theta,
                                   int64_t gs, NoiseSource& noise) {
  if (q.kind() != AggregateKind::kSum) {
    return absl::InvalidArgumentError("private DS bound needs a SUM query");
  }
  RETURN_IF_ERROR(CheckTheta(theta));
  ASSIGN_OR_RETURN(TruncationLadder ladder,
                   TruncationLadder::ForSensitivity(gs));
  return PrivateBoundDsIndex(CountsBelowOnLadder(q, t, ladder),
                             MatchingCount(q.predicate(), t), ladder,
                             eps_prime, theta, noise);
}

absl::StatusOr<bool> VerifyTruncationProperties(const AggregateQuery& q,
                                                const Table& t, int64_t gs) {
  if (q.kind() != AggregateKind::kSum) {
    return absl::InvalidArgumentError("truncation properties need SUM");
  }
  ASSIGN_OR_RETURN(int64_t full, Answer(q, t));
  const int64_t ds = DownwardLocalSensitivity(q, t);
  const int64_t top = std::max<int64_t>(gs, ds) + 1;
  int64_t prev = 0;
  for (int64_t thr = 0; thr <= top; ++thr) {
    ASSIGN_OR_RETURN(int64_t cur, TruncatedSum(q, t, thr));
    if (cur < prev || cur > full) return false;
    if (thr >= ds && cur != full) return false;
    prev = cur;
  }
  // Removing one row moves q(D, t) by at most t.
  for (size_t r = 0; r < t.num_rows(); ++r) {
    const Table smaller = t.WithRowRemoved(r);
    for (int64_t thr = 0; thr <= top; ++thr) {
      ASSIGN_OR_RETURN(int64_t a, TruncatedSum(q, t, thr));
      ASSIGN_OR_RETURN(int64_t b, TruncatedSum(q, smaller, thr));
      if (a - b < 0 || a - b > thr) return false;
    }
  }
  return true;
}

absl::StatusOr<double> TauMinLmSum(double gs, double eps, double delta) {
  RETURN_IF_ERROR(CheckEpsilonDelta(eps, delta));
  if (!(gs > 0) || !std::isfinite(gs)) {
    return absl::InvalidArgumentError("gs must be positive");
  }
  if (delta >= 0.5) return 0.0;
  return gs * std::log(1.0 / (2 * delta)) / eps;
}

absl::StatusOr<double> TauMinR2tSum(double gs, double ds, double eps,
                                    double delta) {
  RETURN_IF_ERROR(CheckEpsilonDelta(eps, delta));
  if (!(gs >= 2) || !std::isfinite(gs)) {
    return absl::InvalidArgumentError("gs must be at least 2");
  }
  if (!(ds >= 0) || !std::isfinite(ds)) {
    return absl::InvalidArgumentError("ds must be nonnegative");
  }
  const double lg = std::log2(gs);
  return 4 * lg * std::log(lg / delta) * ds / eps;
}

ErrorReport LmSumErrorProfile(double q_data, double q_synthetic, double tau,
                              double gs, PrivacyBudget eps) {
  return LaplaceDeciderErrorProfile(q_data, q_synthetic, tau,
                                    gs / eps.epsilon());
}

namespace {

class LmSumDecider : public BasicDecider {
 public:
  LmSumDecider(DeciderContext ctx, int64_t gs)
      : BasicDecider(DeciderKind::kLmSum, ctx,
                     std::make_unique<LaplaceEstimator>(
                         *ctx.q_data,
                         static_cast<double>(gs) / ctx.epsilon.epsilon())),
        gs_(gs) {}

  std::optional<ErrorReport> ClosedFormError() const override {
    return LmSumErrorProfile(*ctx_.q_data, ctx_.q_synthetic, ctx_.tau,
                             static_cast<double>(gs_), ctx_.epsilon);
  }

 private:
  int64_t gs_;
};

class SvtSumDecider : public Decider {
 public:
  SvtSumDecider(DeciderContext ctx, TruncationLadder ladder,
                std::vector<int64_t> sums, std::vector<int64_t> counts_below,
                int64_t matching, bool private_bound, double theta)
      : Decider(std::move(ctx)),
        ladder_(ladder),
        sums_(std::move(sums)),
        counts_below_(std::move(counts_below)),
        matching_(matching),
        private_bound_(private_bound),
        theta_(theta) {}

  DeciderKind kind() const override { return DeciderKind::kSvtSum; }

  Outcome Decide(NoiseSource& noise) const override {
    const double eps = ctx_.epsilon.epsilon();
    int cap = ladder_.length();
    double scale = 2.0 / eps;
    if (private_bound_) {
      cap = PrivateBoundDsIndex(counts_below_, matching_, ladder_,
                                ctx_.epsilon.Fraction(1.0 / 3), theta_, noise);
      scale = 3.0 / eps;
    }
    const double l = ctx_.interval.l;
    const double r = ctx_.interval.r;
    const double rho = noise.Laplace(scale, "svt_rho");
    for (int j = 1; j <= cap; ++j) {
      const double t = static_cast<double>(ladder_.threshold(j));
      const double qj = static_cast<double>(sums_[static_cast<size_t>(j)]) / t;
      if (qj + noise.Laplace(scale, "svt_nu") >= r / t + rho) {
        return Outcome::Unmet();
      }
    }
    for (int j = 1; j <= cap; ++j) {
      const double t = static_cast<double>(ladder_.threshold(j));
      const double qj = static_cast<double>(sums_[static_cast<size_t>(j)]) / t;
      if (qj + noise.Laplace(scale, "svt_nu") >= (l + 1) / t + rho) {
        return Outcome::Satisfied();
      }
    }
    return Outcome::Unmet();
  }

 private:
  TruncationLadder ladder_;
  std::vector<int64_t> sums_;
  std::vector<int64_t> counts_below_;
  int64_t matching_;
  bool private_bound_;
  double theta_;
};

}  // namespace

absl::StatusOr<std::unique_ptr<Decider>> CreateSumDecider(
    DeciderKind kind, const DeciderRequest& req, DeciderContext ctx) {
  switch (kind) {
    case DeciderKind::kLmSum: {
      ASSIGN_OR_RETURN(int64_t gs, ResolveSumSensitivity(req, 1));
      return std::unique_ptr<Decider>(new LmSumDecider(std::move(ctx), gs));
    }
    case DeciderKind::kR2tSum: {
      RETURN_IF_ERROR(CheckBeta(req.options.beta));
      ASSIGN_OR_RETURN(int64_t gs, ResolveSumSensitivity(req, 2));
      ASSIGN_OR_RETURN(TruncationLadder ladder,
                       TruncationLadder::ForSensitivity(gs));
      ASSIGN_OR_RETURN(std::vector<int64_t> sums,
                       TruncatedSumsOnLadder(*req.query, *req.data, ladder));
      auto est = std::make_unique<R2TEstimator>(std::move(sums), ladder,
                                                ctx.epsilon, req.options.beta);
      return std::unique_ptr<Decider>(
          new BasicDecider(kind, std::move(ctx), std::move(est)));
    }
    case DeciderKind::kSvtSum: {
      RETURN_IF_ERROR(CheckTheta(req.options.theta));
      ASSIGN_OR_RETURN(int64_t gs, ResolveSumSensitivity(req, 2));
      ASSIGN_OR_RETURN(TruncationLadder ladder,
                       TruncationLadder::ForSensitivity(gs));
      ASSIGN_OR_RETURN(std::vector<int64_t> sums,
                       TruncatedSumsOnLadder(*req.query, *req.data, ladder));
      std::vector<int64_t> counts =
          CountsBelowOnLadder(*req.query, *req.data, ladder);
      const int64_t matching = MatchingCount(req.query->predicate(), *req.data);
      return std::unique_ptr<Decider>(new SvtSumDecider(
          std::move(ctx), ladder, std::move(sums), std::move(counts), matching,
          req.options.svt_private_ds_bound, req.options.theta));
    }
    default:
      return absl::InvalidArgumentError("not a SUM decider");
  }
}

absl::StatusOr<Outcome> LmSumDecide(const DeciderRequest& req,
                                    NoiseSource& noise) {
  return DecideOnce(DeciderKind::kLmSum, req, noise);
}

absl::StatusOr<Outcome> R2tSumDecide(const DeciderRequest& req,
                                     NoiseSource& noise) {
  return DecideOnce(DeciderKind::kR2tSum, req, noise);
}

absl::StatusOr<Outcome> SvtSumDecide(const DeciderRequest& req,
                                     NoiseSource& noise) {
  return DecideOnce(DeciderKind::kSvtSum, req, noise);
}

}  // namespace pqdecide
