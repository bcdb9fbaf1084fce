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

#ifndef PQDECIDE_HARNESS_CONFIG_H_
#define PQDECIDE_HARNESS_CONFIG_H_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "pqdecide/harness/sweep.h"

namespace pqdecide {

// Sweep configuration file (JSON, see docs/formats.md). File paths inside
// it are resolved relative to the directory holding the config.
struct SweepConfig {
  std::string schema_path;
  std::string data_path;
  std::string synthetic_path;
  struct QueryEntry {
    std::string id;
    std::string text;
  };
  std::vector<QueryEntry> queries;
  std::vector<DeciderKind> deciders;
  SweepGrid grid;
  DeciderOptions options;
  int64_t trials = 100;
  uint64_t seed = 0;
  int threads = 1;
  bool zero_noise = false;
};

absl::StatusOr<SweepConfig> ParseSweepConfig(std::string_view json_text,
                                             const std::string& base_dir);
absl::StatusOr<SweepConfig> LoadSweepConfigFile(const std::string& path);

// Reads a DeciderOptions object: {"gs", "beta", "theta",
// "svt_private_ds_bound"}, every key optional.
absl::StatusOr<DeciderOptions> ParseDeciderOptionsJson(std::string_view json);

// Tables and bound queries loaded from a config, with a SweepSpec whose
// pointers refer into this object. Not copyable or movable for that reason.
class PreparedSweep {
 public:
  static absl::StatusOr<std::unique_ptr<PreparedSweep>> Load(
      const SweepConfig& config);

  PreparedSweep(const PreparedSweep&) = delete;
  PreparedSweep& operator=(const PreparedSweep&) = delete;

  const SweepSpec& spec() const { return spec_; }
  SweepSpec& mutable_spec() { return spec_; }
  const Table& data() const { return *data_; }
  const Table& synthetic() const { return *synthetic_; }

 private:
  PreparedSweep() = default;

  std::shared_ptr<const Schema> schema_;
  std::unique_ptr<Table> data_;
  std::unique_ptr<Table> synthetic_;
  SweepSpec spec_;
};

// Whole-file read; NotFound when the file cannot be opened.
absl::StatusOr<std::string> ReadFileToString(const std::string& path);
absl::StatusOr<std::shared_ptr<const Schema>> LoadSchemaFile(
    const std::string& path);

}  // namespace pqdecide

#endif  // PQDECIDE_HARNESS_CONFIG_H_
