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

#ifndef PQDECIDE_HARNESS_SWEEP_H_
#define PQDECIDE_HARNESS_SWEEP_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "pqdecide/harness/trials.h"

namespace pqdecide {

struct SweepGrid {
  std::vector<double> tau_percents = {0.2, 0.8, 3.2, 12.8, 51.2};
  std::vector<double> epsilons = {0.0625, 0.125, 0.25, 0.5, 1.0};
};

inline constexpr double kDefaultSweepEpsilon = 0.25;
inline constexpr double kDefaultSweepTauPct = 3.2;

struct NamedQuery {
  std::string id;
  AggregateQuery query;
};

struct SweepSpec {
  SweepGrid grid;
  std::vector<DeciderKind> deciders;
  std::vector<NamedQuery> queries;
  const Table* data = nullptr;
  const Table* synthetic = nullptr;
  DeciderOptions options;
  int64_t trials = 100;
  uint64_t seed = 0;
  int threads = 1;
  NoiseMode mode = NoiseMode::kLive;
};

// Every (query, decider, tau%, epsilon) combination in that nesting order,
// skipping deciders built for a different aggregate than the query. Each
// row reuses the master seed, so rows differ only through their parameters.
absl::StatusOr<std::vector<ResultRow>> Sweep(const SweepSpec& spec);

// Smallest percentage p (in grid order of magnitude) with
// |q_data - q_synthetic| < |q_synthetic| * p / 100.
std::optional<double> FirstTauPctInInterval(double q_data, double q_synthetic,
                                            const std::vector<double>& pcts);

}  // namespace pqdecide

#endif  // PQDECIDE_HARNESS_SWEEP_H_
