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

#include "pqdecide/decider/decider.h"

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "pqdecide/count/count_deciders.h"
#include "pqdecide/median/median_deciders.h"
#include "pqdecide/relational/evaluate.h"
#include "pqdecide/status_macros.h"
#include "pqdecide/sum/sum_deciders.h"

namespace pqdecide {

absl::StatusOr<DeciderContext> ResolveContext(const DeciderRequest& req) {
  if (req.query == nullptr || req.data == nullptr || req.synthetic == nullptr) {
    return absl::InvalidArgumentError(
        "decider request needs a query, a private table and a synthetic table");
  }
  DeciderContext ctx;
  ctx.epsilon = req.epsilon;
  absl::StatusOr<int64_t> qs = Answer(*req.query, *req.synthetic);
  if (!qs.ok()) {
    return absl::Status(qs.status().code(),
                        absl::StrCat("on the synthetic table: ",
                                     qs.status().message()));
  }
  ctx.q_synthetic = static_cast<double>(*qs);
  ASSIGN_OR_RETURN(ctx.tau, req.tau.Resolve(ctx.q_synthetic));
  ctx.interval = Interval::Around(ctx.q_synthetic, ctx.tau);
  absl::StatusOr<int64_t> qd = Answer(*req.query, *req.data);
  if (qd.ok()) {
    ctx.q_data = static_cast<double>(*qd);
  } else if (!absl::IsFailedPrecondition(qd.status())) {
    return qd.status();
  }
  return ctx;
}

Outcome BasicDecide(const Interval& interval, const NoisyEstimator& estimator,
                    NoiseSource& noise) {
  return interval.ContainsStrict(estimator.Estimate(noise)) ? Outcome::Satisfied()
                                                            : Outcome::Unmet();
}

absl::StatusOr<Outcome> BasicDecide(const DeciderRequest& req,
                                    const NoisyEstimator& estimator,
                                    NoiseSource& noise) {
  ASSIGN_OR_RETURN(DeciderContext ctx, ResolveContext(req));
  return BasicDecide(ctx.interval, estimator, noise);
}

absl::StatusOr<std::unique_ptr<Decider>> CreateDecider(
    DeciderKind kind, const DeciderRequest& req) {
  ASSIGN_OR_RETURN(DeciderContext ctx, ResolveContext(req));
  const AggregateKind need = RequiredAggregate(kind);
  if (req.query->kind() != need) {
    return absl::InvalidArgumentError(absl::StrCat(
        "decider ", DeciderKindName(kind), " needs a ", AggregateKindName(need),
        " query, got ", AggregateKindName(req.query->kind())));
  }
  switch (need) {
    case AggregateKind::kCount:
      return CreateCountDecider(kind, req, std::move(ctx));
    case AggregateKind::kSum:
      return CreateSumDecider(kind, req, std::move(ctx));
    case AggregateKind::kMedian:
      return CreateMedianDecider(kind, req, std::move(ctx));
  }
  return absl::InternalError("unhandled aggregate kind");
}

absl::StatusOr<Outcome> DecideOnce(DeciderKind kind, const DeciderRequest& req,
                                   NoiseSource& noise) {
  ASSIGN_OR_RETURN(std::unique_ptr<Decider> d, CreateDecider(kind, req));
  return d->Decide(noise);
}

}  // namespace pqdecide
