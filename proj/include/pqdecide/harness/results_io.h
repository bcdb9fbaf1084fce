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

#ifndef PQDECIDE_HARNESS_RESULTS_IO_H_
#define PQDECIDE_HARNESS_RESULTS_IO_H_

#include <string>
#include <vector>

#include "pqdecide/harness/trials.h"

namespace pqdecide {

// Fixed column order:
//   query_id,decider,tau_pct,tau,epsilon,trials,error,false_positive,
//   false_negative,correct_outcome,d_q,first_tau_pct_in_interval,seed
// followed by wall_seconds when `with_timing` is set. Timing is opt-in
// because it is the only column that differs between identical runs.
std::string ResultsCsvHeader(bool with_timing);
std::string ResultRowToCsv(const ResultRow& row, bool with_timing);
std::string ResultsToCsv(const std::vector<ResultRow>& rows, bool with_timing);

// One JSON object per line with the same fields.
std::string ResultRowToJson(const ResultRow& row, bool with_timing);
std::string ResultsToJsonl(const std::vector<ResultRow>& rows,
                           bool with_timing);

}  // namespace pqdecide

#endif  // PQDECIDE_HARNESS_RESULTS_IO_H_
