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

// pqdecide command-line tool. Run `pqdecide --help` for the subcommands.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "json.hpp"
#include "pqdecide/count/count_deciders.h"
#include "pqdecide/decider/decider.h"
#include "pqdecide/harness/config.h"
#include "pqdecide/harness/dp_audit.h"
#include "pqdecide/harness/results_io.h"
#include "pqdecide/harness/sweep.h"
#include "pqdecide/harness/synthetic.h"
#include "pqdecide/relational/evaluate.h"
#include "pqdecide/status_macros.h"
#include "pqdecide/sum/sum_deciders.h"

namespace pqdecide {
namespace {

using nlohmann::ordered_json;

struct TableArgs {
  std::string schema;
  std::string data;
  std::string synthetic;
  std::string query;
};

struct TauArgs {
  std::optional<double> pct;
  std::optional<double> abs;
};

struct OptionArgs {
  std::optional<int64_t> gs;
  double beta = 0.05;
  double theta = 0.95;
  bool plain_svt = false;

  DeciderOptions ToOptions() const {
    DeciderOptions o;
    o.gs = gs;
    o.beta = beta;
    o.theta = theta;
    o.svt_private_ds_bound = !plain_svt;
    return o;
  }
};

void AddTableFlags(CLI::App* cmd, TableArgs& a) {
  cmd->add_option("--schema", a.schema, "Schema JSON file")->required();
  cmd->add_option("--data", a.data, "Private table D (CSV)")->required();
  cmd->add_option("--synthetic", a.synthetic, "Synthetic table D_s (CSV)")
      ->required();
  cmd->add_option("--query", a.query, "Aggregate query text")->required();
}

void AddTauFlags(CLI::App* cmd, TauArgs& t) {
  auto* pct = cmd->add_option("--tau-pct", t.pct,
                              "Distance bound as a percentage of q(D_s)");
  auto* abs = cmd->add_option("--tau-abs", t.abs, "Absolute distance bound");
  pct->excludes(abs);
  abs->excludes(pct);
}

void AddOptionFlags(CLI::App* cmd, OptionArgs& o) {
  cmd->add_option("--gs", o.gs,
                  "Global sensitivity bound for SUM (default: domain max)");
  cmd->add_option("--beta", o.beta, "R2T failure probability");
  cmd->add_option("--theta", o.theta, "SVT fraction for the private DS bound");
  cmd->add_flag("--plain-svt", o.plain_svt,
                "svt_sum without the private DS bound");
}

absl::StatusOr<TauSpec> TauFrom(const TauArgs& t) {
  if (t.pct) return TauSpec::PercentOfSynthetic(*t.pct);
  if (t.abs) return TauSpec::Absolute(*t.abs);
  return absl::InvalidArgumentError("pass one of --tau-pct or --tau-abs");
}

struct Loaded {
  std::shared_ptr<const Schema> schema;
  std::unique_ptr<Table> data;
  std::unique_ptr<Table> synthetic;
  std::unique_ptr<AggregateQuery> query;
};

absl::StatusOr<Loaded> LoadInputs(const TableArgs& a) {
  Loaded l;
  ASSIGN_OR_RETURN(l.schema, LoadSchemaFile(a.schema));
  ASSIGN_OR_RETURN(Table d, LoadTableCsvFile(a.data, l.schema));
  ASSIGN_OR_RETURN(Table s, LoadTableCsvFile(a.synthetic, l.schema));
  ASSIGN_OR_RETURN(AggregateQuery q, ParseAndBindQuery(a.query, *l.schema));
  l.data = std::make_unique<Table>(std::move(d));
  l.synthetic = std::make_unique<Table>(std::move(s));
  l.query = std::make_unique<AggregateQuery>(std::move(q));
  return l;
}

absl::Status WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  out << content;
  out.close();
  if (!out) return absl::DataLossError(absl::StrCat("short write to ", path));
  return absl::OkStatus();
}

// decide ------------------------------------------------------------------

struct DecideArgs {
  TableArgs tables;
  TauArgs tau;
  OptionArgs opts;
  double epsilon = 0.25;
  std::string decider;
  uint64_t seed = 0;
  bool zero_noise = false;
};

absl::Status RunDecide(const DecideArgs& a) {
  ASSIGN_OR_RETURN(Loaded in, LoadInputs(a.tables));
  ASSIGN_OR_RETURN(DeciderKind kind, ParseDeciderKind(a.decider));
  ASSIGN_OR_RETURN(TauSpec tau, TauFrom(a.tau));
  ASSIGN_OR_RETURN(PrivacyBudget eps, PrivacyBudget::Create(a.epsilon));
  DeciderRequest req;
  req.query = in.query.get();
  req.data = in.data.get();
  req.synthetic = in.synthetic.get();
  req.tau = tau;
  req.epsilon = eps;
  req.options = a.opts.ToOptions();
  ASSIGN_OR_RETURN(std::unique_ptr<Decider> decider, CreateDecider(kind, req));

  NoiseSource noise(RandomSource(a.seed, 0),
                    a.zero_noise ? NoiseMode::kZeroNoise : NoiseMode::kLive);
  const Outcome o = decider->Decide(noise);
  const DeciderContext& ctx = decider->context();

  // Only public quantities go out: nothing here depends on D except o.
  ordered_json j;
  j["decider"] = DeciderKindName(kind);
  j["query"] = in.query->text();
  j["outcome"] = o.label();
  j["o"] = o.o;
  j["tau"] = ctx.tau;
  if (tau.is_percent()) j["tau_pct"] = tau.value();
  j["interval"] = {ctx.interval.l, ctx.interval.r};
  j["q_synthetic"] = ctx.q_synthetic;
  j["epsilon"] = eps.epsilon();
  j["seed"] = a.seed;
  j["mode"] = a.zero_noise ? "zero_noise" : "live";
  std::cout << (o.satisfied() ? "SATISFIED" : "UNMET") << "\n"
            << j.dump() << "\n";
  return absl::OkStatus();
}

// sweep -------------------------------------------------------------------

struct SweepArgs {
  std::string config;
  std::string out;
  std::string jsonl;
  bool with_timing = false;
  std::optional<int64_t> trials;
  std::optional<uint64_t> seed;
  std::optional<int> threads;
};

absl::Status RunSweep(const SweepArgs& a) {
  ASSIGN_OR_RETURN(SweepConfig config, LoadSweepConfigFile(a.config));
  if (a.trials) config.trials = *a.trials;
  if (a.seed) config.seed = *a.seed;
  if (a.threads) config.threads = *a.threads;
  ASSIGN_OR_RETURN(std::unique_ptr<PreparedSweep> prepared,
                   PreparedSweep::Load(config));
  ASSIGN_OR_RETURN(std::vector<ResultRow> rows, Sweep(prepared->spec()));
  RETURN_IF_ERROR(WriteFile(a.out, ResultsToCsv(rows, a.with_timing)));
  if (!a.jsonl.empty()) {
    RETURN_IF_ERROR(WriteFile(a.jsonl, ResultsToJsonl(rows, a.with_timing)));
  }
  ordered_json j;
  j["rows"] = rows.size();
  j["out"] = a.out;
  if (!a.jsonl.empty()) j["jsonl"] = a.jsonl;
  std::cout << j.dump() << "\n";
  return absl::OkStatus();
}

// thresholds --------------------------------------------------------------

struct ThresholdArgs {
  double epsilon = 0.25;
  double delta = 0.05;
  std::optional<double> gs;
  std::optional<double> ds;
};

absl::Status RunThresholds(const ThresholdArgs& a) {
  ordered_json j;
  j["epsilon"] = a.epsilon;
  j["delta"] = a.delta;
  ASSIGN_OR_RETURN(j["lm_count"], TauMinLmCount(a.epsilon, a.delta));
  ASSIGN_OR_RETURN(j["em_count"], TauMinEmCount(a.epsilon, a.delta));
  if (a.gs) {
    j["gs"] = *a.gs;
    ASSIGN_OR_RETURN(j["lm_sum"], TauMinLmSum(*a.gs, a.epsilon, a.delta));
    if (a.ds) {
      j["ds"] = *a.ds;
      ASSIGN_OR_RETURN(j["r2t_sum"],
                       TauMinR2tSum(*a.gs, *a.ds, a.epsilon, a.delta));
    }
  } else if (a.ds) {
    return absl::InvalidArgumentError("--ds needs --gs");
  }
  std::cout << j.dump() << "\n";
  return absl::OkStatus();
}

// gen ---------------------------------------------------------------------

struct GenArgs {
  std::string spec;
  std::string out_data;
  std::string out_synthetic;
  std::string out_schema;
  std::optional<uint64_t> seed;
};

absl::Status RunGen(const GenArgs& a) {
  ASSIGN_OR_RETURN(std::string text, ReadFileToString(a.spec));
  ASSIGN_OR_RETURN(
      SyntheticPairSpec spec,
      ParseSyntheticPairSpec(
          text, std::filesystem::path(a.spec).parent_path().string()));
  if (a.seed) spec.seed = *a.seed;
  ASSIGN_OR_RETURN(SyntheticPair pair, GenSyntheticPair(spec));
  RETURN_IF_ERROR(WriteFile(a.out_data, WriteTableCsv(pair.data)));
  RETURN_IF_ERROR(WriteFile(a.out_synthetic, WriteTableCsv(pair.synthetic)));
  if (!a.out_schema.empty()) {
    RETURN_IF_ERROR(WriteFile(a.out_schema, SchemaToJson(*spec.schema) + "\n"));
  }
  ASSIGN_OR_RETURN(int64_t qd, Answer(pair.query, pair.data));
  ASSIGN_OR_RETURN(int64_t qs, Answer(pair.query, pair.synthetic));
  ordered_json j;
  j["query"] = pair.query.text();
  j["rows_data"] = pair.data.num_rows();
  j["rows_synthetic"] = pair.synthetic.num_rows();
  j["q_data"] = qd;
  j["q_synthetic"] = qs;
  j["seed"] = spec.seed;
  std::cout << j.dump() << "\n";
  return absl::OkStatus();
}

// check-dp ----------------------------------------------------------------

struct CheckDpArgs {
  TableArgs tables;
  std::string neighbor;
  TauArgs tau;
  OptionArgs opts;
  double epsilon = 1.0;
  std::string decider;
  int64_t trials = 200000;
  uint64_t seed = 0;
  int threads = 1;
  bool halve_noise = false;
};

absl::Status RunCheckDp(const CheckDpArgs& a) {
  ASSIGN_OR_RETURN(Loaded in, LoadInputs(a.tables));
  ASSIGN_OR_RETURN(Table neighbor, LoadTableCsvFile(a.neighbor, in.schema));
  TrialPlan plan;
  ASSIGN_OR_RETURN(plan.decider, ParseDeciderKind(a.decider));
  ASSIGN_OR_RETURN(plan.tau, TauFrom(a.tau));
  ASSIGN_OR_RETURN(plan.epsilon, PrivacyBudget::Create(a.epsilon));
  plan.query = in.query.get();
  plan.data = in.data.get();
  plan.synthetic = in.synthetic.get();
  plan.options = a.opts.ToOptions();
  plan.trials = a.trials;
  plan.seed = a.seed;
  plan.threads = a.threads;
  plan.noise_scale_factor = a.halve_noise ? 0.5 : 1.0;
  ASSIGN_OR_RETURN(DpRatioResult r, DpRatioCheck(plan, neighbor));

  auto finite_or_null = [](double v) -> ordered_json {
    return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
  };
  ordered_json j;
  j["decider"] = a.decider;
  j["epsilon"] = r.epsilon;
  j["trials"] = r.trials;
  j["p_data"] = r.p_d;
  j["p_neighbor"] = r.p_neighbor;
  j["ratio"] = finite_or_null(r.ratio);
  j["se"] = finite_or_null(r.se);
  j["bound"] = finite_or_null(r.bound);
  j["passes"] = r.passes;
  j["fault_halve_noise"] = a.halve_noise;
  std::cout << (r.passes ? "WITHIN_BOUND" : "EXCEEDS_BOUND") << "\n"
            << j.dump() << "\n";
  return absl::OkStatus();
}

int Report(const absl::Status& s) {
  if (s.ok()) return 0;
  std::cerr << "error: " << s.message() << "\n";
  return 1;
}

}  // namespace
}  // namespace pqdecide

int main(int argc, char** argv) {
  using namespace pqdecide;
  CLI::App app{"Private distance-bound deciders for synthetic data queries"};
  app.require_subcommand(1);

  DecideArgs decide;
  CLI::App* c_decide =
      app.add_subcommand("decide", "Run one private decision");
  AddTableFlags(c_decide, decide.tables);
  AddTauFlags(c_decide, decide.tau);
  AddOptionFlags(c_decide, decide.opts);
  c_decide->add_option("--epsilon", decide.epsilon, "Privacy budget");
  c_decide->add_option("--decider", decide.decider, "Decider name")
      ->required();
  c_decide->add_option("--seed", decide.seed, "Random seed");
  c_decide->add_flag("--zero-noise", decide.zero_noise,
                     "Deterministic run with all noise set to zero");

  SweepArgs sweep;
  CLI::App* c_sweep =
      app.add_subcommand("sweep", "Monte-Carlo error over a tau/epsilon grid");
  c_sweep->add_option("--grid-config", sweep.config, "Sweep config JSON")
      ->required();
  c_sweep->add_option("--out", sweep.out, "Results CSV")->required();
  c_sweep->add_option("--jsonl", sweep.jsonl, "Optional JSON-lines mirror");
  c_sweep->add_flag("--with-timing", sweep.with_timing,
                    "Add a wall_seconds column");
  c_sweep->add_option("--trials", sweep.trials, "Override trials per row");
  c_sweep->add_option("--seed", sweep.seed, "Override the master seed");
  c_sweep->add_option("--threads", sweep.threads, "Override worker threads");

  ThresholdArgs thr;
  CLI::App* c_thr =
      app.add_subcommand("thresholds", "Smallest tau with error at most delta");
  c_thr->add_option("--epsilon", thr.epsilon, "Privacy budget");
  c_thr->add_option("--delta", thr.delta, "Target error");
  c_thr->add_option("--gs", thr.gs, "Global sensitivity for SUM");
  c_thr->add_option("--ds", thr.ds, "Downward local sensitivity for SUM");

  GenArgs gen;
  CLI::App* c_gen = app.add_subcommand("gen", "Generate a synthetic pair");
  c_gen->add_option("--spec", gen.spec, "Pair spec JSON")->required();
  c_gen->add_option("--out-data", gen.out_data, "Output CSV for D")
      ->required();
  c_gen->add_option("--out-synthetic", gen.out_synthetic,
                    "Output CSV for D_s")
      ->required();
  c_gen->add_option("--out-schema", gen.out_schema, "Output schema JSON");
  c_gen->add_option("--seed", gen.seed, "Override the seed in --spec");

  CheckDpArgs dp;
  CLI::App* c_dp = app.add_subcommand(
      "check-dp", "Empirical Pr[o=1] ratio on two neighboring tables");
  AddTableFlags(c_dp, dp.tables);
  AddTauFlags(c_dp, dp.tau);
  AddOptionFlags(c_dp, dp.opts);
  c_dp->add_option("--neighbor", dp.neighbor, "Neighbor of --data (CSV)")
      ->required();
  c_dp->add_option("--epsilon", dp.epsilon, "Privacy budget");
  c_dp->add_option("--decider", dp.decider, "Decider name")->required();
  c_dp->add_option("--trials", dp.trials, "Trials per table");
  c_dp->add_option("--seed", dp.seed, "Random seed");
  c_dp->add_option("--threads", dp.threads, "Worker threads");
  c_dp->add_flag("--fault-halve-noise", dp.halve_noise,
                 "Halve every noise scale (a deliberately broken decider)");

  CLI11_PARSE(app, argc, argv);

  if (c_decide->parsed()) return Report(RunDecide(decide));
  if (c_sweep->parsed()) return Report(RunSweep(sweep));
  if (c_thr->parsed()) return Report(RunThresholds(thr));
  if (c_gen->parsed()) return Report(RunGen(gen));
  if (c_dp->parsed()) return Report(RunCheckDp(dp));
  return 1;
}
