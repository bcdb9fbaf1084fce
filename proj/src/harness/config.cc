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

#include "pqdecide/harness/config.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "json.hpp"
#include "pqdecide/status_macros.h"

namespace pqdecide {
namespace {

using nlohmann::json;

std::string Resolve(const std::string& base_dir, const std::string& p) {
  std::filesystem::path path(p);
  if (path.is_relative() && !base_dir.empty()) {
    path = std::filesystem::path(base_dir) / path;
  }
  return path.string();
}

absl::StatusOr<json> ParseJson(std::string_view text, std::string_view what) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat(std::string(what), " is not valid JSON: ", e.what()));
  }
}

absl::StatusOr<DeciderOptions> OptionsFromJson(const json& j) {
  if (!j.is_object()) {
    return absl::InvalidArgumentError("decider options must be an object");
  }
  DeciderOptions o;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    if (key == "gs") {
      o.gs = it->get<int64_t>();
    } else if (key == "beta") {
      o.beta = it->get<double>();
    } else if (key == "theta") {
      o.theta = it->get<double>();
    } else if (key == "svt_private_ds_bound") {
      o.svt_private_ds_bound = it->get<bool>();
    } else {
      return absl::InvalidArgumentError(
          absl::StrCat("unknown decider option '", key, "'"));
    }
  }
  return o;
}

}  // namespace

absl::StatusOr<std::string> ReadFileToString(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open ", path));
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

absl::StatusOr<std::shared_ptr<const Schema>> LoadSchemaFile(
    const std::string& path) {
  ASSIGN_OR_RETURN(std::string text, ReadFileToString(path));
  absl::StatusOr<Schema> s = ParseSchemaJson(text);
  if (!s.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path, ": ", s.status().message()));
  }
  return std::make_shared<const Schema>(*std::move(s));
}

absl::StatusOr<DeciderOptions> ParseDeciderOptionsJson(std::string_view text) {
  ASSIGN_OR_RETURN(json j, ParseJson(text, "decider options"));
  try {
    return OptionsFromJson(j);
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed decider option: ", e.what()));
  }
}

absl::StatusOr<SweepConfig> ParseSweepConfig(std::string_view json_text,
                                             const std::string& base_dir) {
  ASSIGN_OR_RETURN(json j, ParseJson(json_text, "sweep config"));
  if (!j.is_object()) {
    return absl::InvalidArgumentError("sweep config must be a JSON object");
  }
  SweepConfig c;
  try {
    for (const char* key : {"schema", "data", "synthetic", "queries",
                            "deciders"}) {
      if (!j.contains(key)) {
        return absl::InvalidArgumentError(
            absl::StrCat("sweep config is missing '", key, "'"));
      }
    }
    c.schema_path = Resolve(base_dir, j.at("schema").get<std::string>());
    c.data_path = Resolve(base_dir, j.at("data").get<std::string>());
    c.synthetic_path = Resolve(base_dir, j.at("synthetic").get<std::string>());

    int auto_id = 0;
    for (const json& q : j.at("queries")) {
      SweepConfig::QueryEntry e;
      if (q.is_string()) {
        e.text = q.get<std::string>();
        e.id = absl::StrCat("q", ++auto_id);
      } else {
        e.text = q.at("query").get<std::string>();
        e.id = q.contains("id") ? q.at("id").get<std::string>()
                                : absl::StrCat("q", ++auto_id);
      }
      c.queries.push_back(std::move(e));
    }
    for (const json& d : j.at("deciders")) {
      ASSIGN_OR_RETURN(DeciderKind k, ParseDeciderKind(d.get<std::string>()));
      c.deciders.push_back(k);
    }
    if (j.contains("tau_percents")) {
      c.grid.tau_percents = j.at("tau_percents").get<std::vector<double>>();
    }
    if (j.contains("epsilons")) {
      c.grid.epsilons = j.at("epsilons").get<std::vector<double>>();
    }
    if (j.contains("options")) {
      ASSIGN_OR_RETURN(c.options, OptionsFromJson(j.at("options")));
    }
    c.trials = j.value("trials", c.trials);
    c.seed = j.value("seed", c.seed);
    c.threads = j.value("threads", c.threads);
    c.zero_noise = j.value("zero_noise", c.zero_noise);
  } catch (const json::exception& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("malformed sweep config: ", e.what()));
  }
  if (c.trials < 1) {
    return absl::InvalidArgumentError("trials must be at least 1");
  }
  if (c.grid.tau_percents.empty() || c.grid.epsilons.empty()) {
    return absl::InvalidArgumentError("the sweep grid is empty");
  }
  return c;
}

absl::StatusOr<SweepConfig> LoadSweepConfigFile(const std::string& path) {
  ASSIGN_OR_RETURN(std::string text, ReadFileToString(path));
  return ParseSweepConfig(
      text, std::filesystem::path(path).parent_path().string());
}

absl::StatusOr<std::unique_ptr<PreparedSweep>> PreparedSweep::Load(
    const SweepConfig& config) {
  std::unique_ptr<PreparedSweep> p(new PreparedSweep());
  ASSIGN_OR_RETURN(p->schema_, LoadSchemaFile(config.schema_path));
  ASSIGN_OR_RETURN(Table d, LoadTableCsvFile(config.data_path, p->schema_));
  ASSIGN_OR_RETURN(Table s,
                   LoadTableCsvFile(config.synthetic_path, p->schema_));
  p->data_ = std::make_unique<Table>(std::move(d));
  p->synthetic_ = std::make_unique<Table>(std::move(s));

  SweepSpec& spec = p->spec_;
  for (const SweepConfig::QueryEntry& e : config.queries) {
    absl::StatusOr<AggregateQuery> q = ParseAndBindQuery(e.text, *p->schema_);
    if (!q.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("query '", e.id, "': ", q.status().message()));
    }
    spec.queries.push_back(NamedQuery{e.id, *std::move(q)});
  }
  spec.grid = config.grid;
  spec.deciders = config.deciders;
  spec.data = p->data_.get();
  spec.synthetic = p->synthetic_.get();
  spec.options = config.options;
  spec.trials = config.trials;
  spec.seed = config.seed;
  spec.threads = config.threads;
  spec.mode = config.zero_noise ? NoiseMode::kZeroNoise : NoiseMode::kLive;
  return p;
}

}  // namespace pqdecide
