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

#ifndef PQDECIDE_DECIDER_TYPES_H_
#define PQDECIDE_DECIDER_TYPES_H_

#include <cstdint>
#include <optional>
#include <string>

#include "absl/status/statusor.h"
#include "pqdecide/dp/noise.h"
#include "pqdecide/relational/query.h"
#include "pqdecide/relational/table.h"

namespace pqdecide {

// Distance bound, either absolute or as a percentage of |q(D_s)|.
class TauSpec {
 public:
  static TauSpec Absolute(double tau) { return TauSpec(false, tau); }
  static TauSpec PercentOfSynthetic(double percent) {
    return TauSpec(true, percent);
  }

  bool is_percent() const { return is_percent_; }
  double value() const { return value_; }

  // Resolved tau; fails unless the result is finite and positive.
  absl::StatusOr<double> Resolve(double q_synthetic) const;

  std::string ToString() const;

 private:
  TauSpec(bool is_percent, double value)
      : is_percent_(is_percent), value_(value) {}
  bool is_percent_;
  double value_;
};

// The open acceptance window (l, r) = (q(D_s) - tau, q(D_s) + tau).
struct Interval {
  double l = 0;
  double r = 0;

  static Interval Around(double center, double tau) {
    return {center - tau, center + tau};
  }
  bool ContainsStrict(double x) const { return l < x && x < r; }
};

struct Outcome {
  int o = 0;

  static Outcome Satisfied() { return {1}; }
  static Outcome Unmet() { return {0}; }

  bool satisfied() const { return o == 1; }
  const char* label() const {
    return o == 1 ? "Distance bound satisfied" : "Distance bound unmet";
  }
  friend bool operator==(Outcome a, Outcome b) { return a.o == b.o; }
};

enum class ErrorKind { kClosedForm, kUpperBound, kMonteCarlo };

const char* ErrorKindName(ErrorKind k);

struct ErrorReport {
  double d_q = 0;
  int correct_outcome = 0;
  double error_value = 0;
  ErrorKind kind = ErrorKind::kClosedForm;
  // Only meaningful for kMonteCarlo.
  int64_t trials = 0;
  uint64_t seed = 0;
};

// Builds a report, deriving the correct outcome from d_q < tau.
ErrorReport MakeErrorReport(double q_data, double q_synthetic, double tau,
                            double error_value, ErrorKind kind);

// Argument check shared by the effectiveness-bound formulas: eps finite and
// positive, 0 < delta < 1.
absl::Status CheckEpsilonDelta(double eps, double delta);

enum class DeciderKind {
  kLmCount,
  kEmCountNaive,
  kEmCount,
  kLmSum,
  kR2tSum,
  kSvtSum,
  kEmMed,
  kHistMed,
};

const char* DeciderKindName(DeciderKind k);
absl::StatusOr<DeciderKind> ParseDeciderKind(std::string_view name);

// The aggregate a decider kind is defined for.
AggregateKind RequiredAggregate(DeciderKind k);

// Knobs used by some decider kinds; ignored by the rest.
struct DeciderOptions {
  // Upper bound on the global sensitivity of a SUM query. Defaults to the
  // maximum of the aggregate attribute's domain.
  std::optional<int64_t> gs;
  // Failure probability of the truncated-sum estimator.
  double beta = 0.05;
  // Mass fraction used by the private truncation bound.
  double theta = 0.95;
  // Run the sparse-vector sum decider with a privately chosen ladder cap.
  bool svt_private_ds_bound = true;
};

struct DeciderRequest {
  const AggregateQuery* query = nullptr;
  const Table* data = nullptr;
  const Table* synthetic = nullptr;
  TauSpec tau = TauSpec::Absolute(1);
  PrivacyBudget epsilon;
  DeciderOptions options;
};

}  // namespace pqdecide

#endif  // PQDECIDE_DECIDER_TYPES_H_
