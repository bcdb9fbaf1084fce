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

#include "pqdecide/harness/results_io.h"

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "json.hpp"

namespace pqdecide {
namespace {

std::string Num(double v) { return absl::StrFormat("%.12g", v); }

std::string OptNum(const std::optional<double>& v) {
  return v ? Num(*v) : std::string();
}

// Query ids are user text; quote them when needed.
std::string CsvField(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  return out + "\"";
}

}  // namespace

std::string ResultsCsvHeader(bool with_timing) {
  std::string h =
      "query_id,decider,tau_pct,tau,epsilon,trials,error,false_positive,"
      "false_negative,correct_outcome,d_q,first_tau_pct_in_interval,seed";
  if (with_timing) h += ",wall_seconds";
  return h;
}

std::string ResultRowToCsv(const ResultRow& r, bool with_timing) {
  std::string line = absl::StrCat(
      CsvField(r.query_id), ",", r.decider, ",", OptNum(r.tau_pct), ",",
      Num(r.tau), ",", Num(r.epsilon), ",", r.trials, ",", Num(r.error), ",",
      Num(r.false_positive), ",", Num(r.false_negative), ",",
      r.correct_outcome, ",", Num(r.d_q), ",",
      OptNum(r.first_tau_pct_in_interval), ",", r.seed);
  if (with_timing) absl::StrAppend(&line, ",", Num(r.wall_seconds));
  return line;
}

std::string ResultsToCsv(const std::vector<ResultRow>& rows,
                         bool with_timing) {
  std::string out = ResultsCsvHeader(with_timing) + "\n";
  for (const ResultRow& r : rows) {
    out += ResultRowToCsv(r, with_timing);
    out += "\n";
  }
  return out;
}

std::string ResultRowToJson(const ResultRow& r, bool with_timing) {
  nlohmann::ordered_json j;
  j["query_id"] = r.query_id;
  j["decider"] = r.decider;
  j["tau_pct"] = r.tau_pct ? nlohmann::ordered_json(*r.tau_pct) : nullptr;
  j["tau"] = r.tau;
  j["epsilon"] = r.epsilon;
  j["trials"] = r.trials;
  j["error"] = r.error;
  j["false_positive"] = r.false_positive;
  j["false_negative"] = r.false_negative;
  j["correct_outcome"] = r.correct_outcome;
  j["d_q"] = r.d_q;
  j["first_tau_pct_in_interval"] =
      r.first_tau_pct_in_interval
          ? nlohmann::ordered_json(*r.first_tau_pct_in_interval)
          : nullptr;
  j["seed"] = r.seed;
  if (with_timing) j["wall_seconds"] = r.wall_seconds;
  return j.dump();
}

std::string ResultsToJsonl(const std::vector<ResultRow>& rows,
                           bool with_timing) {
  std::string out;
  for (const ResultRow& r : rows) {
    out += ResultRowToJson(r, with_timing);
    out += "\n";
  }
  return out;
}

}  // namespace pqdecide
