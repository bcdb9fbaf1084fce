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

// Acceptance checks. Each criterion prints a single PASS or FAIL line; run
// one with --criterion N or all of them with no arguments. Reference values
// are recomputed here from first principles rather than taken from the
// library under test wherever that is possible.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "pqdecide/count/count_deciders.h"
#include "pqdecide/decider/decider.h"
#include "pqdecide/harness/dp_audit.h"
#include "pqdecide/harness/sweep.h"
#include "pqdecide/harness/synthetic.h"
#include "pqdecide/harness/trials.h"
#include "pqdecide/median/median_deciders.h"
#include "pqdecide/relational/evaluate.h"
#include "pqdecide/sum/sum_deciders.h"
#include "test_util.h"

namespace pqdecide {
namespace {

using ::pqdecide::testing::ColumnTable;
using ::pqdecide::testing::IntSchema;
using ::pqdecide::testing::MustQuery;
using ::pqdecide::testing::Repeat;

struct Verdict {
  bool pass = false;
  std::string detail;
};

PrivacyBudget Eps(double e) { return *PrivacyBudget::Create(e); }

int Threads() {
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

double BinomialSe(double p, int64_t n) {
  return std::sqrt(p * (1 - p) / static_cast<double>(n));
}

bool RelClose(double got, double want, double rel) {
  return std::fabs(got - want) <= rel * std::fabs(want);
}

// Values for a SUM table totalling `total`, using `cap` as the largest
// value (and including it at least once when total >= cap).
std::vector<int64_t> SumColumn(int64_t total, int64_t cap) {
  std::vector<int64_t> v(static_cast<size_t>(total / cap), cap);
  if (total % cap != 0) v.push_back(total % cap);
  return v;
}

TrialPlan BasePlan(DeciderKind kind, const AggregateQuery& q, const Table& d,
                   const Table& s, double tau, double eps, int64_t trials,
                   uint64_t seed) {
  TrialPlan plan;
  plan.decider = kind;
  plan.query = &q;
  plan.data = &d;
  plan.synthetic = &s;
  plan.tau = TauSpec::Absolute(tau);
  plan.epsilon = Eps(eps);
  plan.trials = trials;
  plan.seed = seed;
  plan.threads = Threads();
  return plan;
}

// Fraction of trials returning o = 1.
double RateOfOne(const TrialPlan& plan) {
  absl::StatusOr<ResultRow> row = RunTrials(plan);
  if (!row.ok()) {
    std::fprintf(stderr, "trial run failed: %s\n",
                 std::string(row.status().message()).c_str());
    std::exit(2);
  }
  return static_cast<double>(row->ones) / static_cast<double>(row->trials);
}

// ---------------------------------------------------------------------------

Verdict ThresholdExamples() {
  const double lm_big = *TauMinLmSum(2e6, 0.1, 0.05);
  const double r2t_big = *TauMinR2tSum(2e6, 9000, 0.1, 0.05);
  const double lm_small = *TauMinLmSum(2, 0.1, 0.05);
  const bool ok = RelClose(lm_big, 4.605e7, 1e-3) &&
                  RelClose(r2t_big, 4.549e7, 5e-3) &&
                  RelClose(lm_small, 46.052, 1e-3);
  return {ok, absl::StrFormat("lm_sum(2e6)=%.5g r2t_sum(2e6,9000)=%.5g "
                              "lm_sum(2)=%.5g",
                              lm_big, r2t_big, lm_small)};
}

Verdict ClosedFormVsMonteCarlo() {
  auto schema = IntSchema(0, 1);
  const AggregateQuery q = AggregateQuery::Count();
  const Table d = ColumnTable(schema, Repeat(0, 749));
  const Table s = ColumnTable(schema, Repeat(0, 749));
  constexpr double kEps = 0.1;
  constexpr double kTau = 10;
  constexpr int64_t kTrials = 100000;
  struct Case {
    DeciderKind kind;
    double expected;
  };
  const Case cases[] = {
      {DeciderKind::kLmCount, std::exp(-1.0)},
      {DeciderKind::kEmCount, 1 / (1 + std::exp(kEps * kTau))},
      {DeciderKind::kEmCountNaive, 1 / (1 + std::exp(kEps / 2))},
  };
  bool ok = true;
  std::vector<std::string> parts;
  for (const Case& c : cases) {
    TrialPlan plan = BasePlan(c.kind, q, d, s, kTau, kEps, kTrials, 1001);
    const double err = 1 - RateOfOne(plan);
    ok = ok && std::fabs(err - c.expected) <= 0.01;
    parts.push_back(absl::StrFormat("%s=%.4f(want %.4f)",
                                    DeciderKindName(c.kind), err, c.expected));
  }
  // The naive score ignores tau altogether.
  TrialPlan wide = BasePlan(DeciderKind::kEmCountNaive, q, d, s, 1000, kEps,
                            kTrials, 1002);
  const double wide_err = 1 - RateOfOne(wide);
  ok = ok && std::fabs(wide_err - 1 / (1 + std::exp(kEps / 2))) <= 0.01;
  parts.push_back(absl::StrFormat("naive@tau1000=%.4f", wide_err));
  return {ok, absl::StrJoin(parts, " ")};
}

// Laplace error for the open interval (q_s - tau, q_s + tau), computed from
// the density directly.
double LaplaceWrongSide(double qd, double qs, double tau, double b) {
  auto cdf = [b](double x) {
    return x < 0 ? 0.5 * std::exp(x / b) : 1 - 0.5 * std::exp(-x / b);
  };
  const double inside = cdf(qs + tau - qd) - cdf(qs - tau - qd);
  return std::fabs(qd - qs) < tau ? 1 - inside : inside;
}

Verdict LmCountErrorGrid() {
  auto schema = IntSchema(0, 1);
  const AggregateQuery q = AggregateQuery::Count();
  constexpr int64_t kQs = 500;
  constexpr double kTau = 10;
  constexpr double kEps = 0.1;
  constexpr int64_t kTrials = 100000;
  const Table s = ColumnTable(schema, Repeat(0, kQs));
  // Far outside, at the endpoints, on both sides of them, and well inside.
  const int offsets[] = {-40, -25, -15, -11, -10, -9, -7, -5, -3, -1, 0,
                         1,   3,   5,   7,   9,   10, 11, 15, 25, 40};
  bool ok = true;
  double worst = 0;
  int idx = 0;
  for (int off : offsets) {
    const int64_t qd = kQs + off;
    const Table d = ColumnTable(schema, Repeat(0, static_cast<size_t>(qd)));
    const double profile =
        LmCountErrorProfile(static_cast<double>(qd), kQs, kTau, Eps(kEps))
            .error_value;
    const double oracle = LaplaceWrongSide(static_cast<double>(qd), kQs, kTau,
                                           1 / kEps);
    if (std::fabs(profile - oracle) > 1e-12) ok = false;
    TrialPlan plan = BasePlan(DeciderKind::kLmCount, q, d, s, kTau, kEps,
                              kTrials, 3000 + static_cast<uint64_t>(idx++));
    const double mc = 1 - RateOfOne(plan);
    const double err_rate = std::fabs(qd - kQs) < kTau ? mc : 1 - mc;
    const double se = BinomialSe(profile, kTrials);
    const double z = std::fabs(err_rate - profile) / se;
    worst = std::max(worst, z);
    if (z > 3) ok = false;
  }
  return {ok, absl::StrFormat("21 positions, worst deviation %.2f se", worst)};
}

struct EffectivenessResult {
  double p_one_equal = 0;
  double p_zero_low = 0;
  double p_zero_high = 0;
};

EffectivenessResult Effectiveness(DeciderKind kind, const AggregateQuery& q,
                                  const Table& equal, const Table& low,
                                  const Table& high, const Table& synthetic,
                                  double tau, const DeciderOptions& options,
                                  uint64_t seed) {
  constexpr int64_t kTrials = 10000;
  EffectivenessResult r;
  TrialPlan plan =
      BasePlan(kind, q, equal, synthetic, tau, 0.25, kTrials, seed);
  plan.options = options;
  r.p_one_equal = RateOfOne(plan);
  plan.data = &low;
  plan.seed = seed + 1;
  r.p_zero_low = 1 - RateOfOne(plan);
  plan.data = &high;
  plan.seed = seed + 2;
  r.p_zero_high = 1 - RateOfOne(plan);
  return r;
}

Verdict EffectivenessAtBound() {
  constexpr double kEps = 0.25;
  constexpr double kDelta = 0.05;
  const double floor = 0.95 - 3 * BinomialSe(0.95, 10000);
  bool ok = true;
  std::vector<std::string> parts;
  auto report = [&](const char* name, double tau,
                    const EffectivenessResult& r) {
    const bool pass = r.p_one_equal >= floor && r.p_zero_low >= floor &&
                      r.p_zero_high >= floor;
    ok = ok && pass;
    parts.push_back(absl::StrFormat(
        "%s[tau=%.6g P1=%.4f P0-=%.4f P0+=%.4f %s]", name, tau, r.p_one_equal,
        r.p_zero_low, r.p_zero_high, pass ? "ok" : "below"));
  };

  {
    auto schema = IntSchema(0, 1);
    const AggregateQuery q = AggregateQuery::Count();
    const Table s = ColumnTable(schema, Repeat(0, 1000));
    for (DeciderKind kind : {DeciderKind::kLmCount, DeciderKind::kEmCount}) {
      const double tau = kind == DeciderKind::kLmCount
                             ? *TauMinLmCount(kEps, kDelta)
                             : *TauMinEmCount(kEps, kDelta);
      const auto lo = static_cast<size_t>(std::floor(1000 - 2 * tau));
      const auto hi = static_cast<size_t>(std::ceil(1000 + 2 * tau));
      const Table low = ColumnTable(schema, Repeat(0, lo));
      const Table high = ColumnTable(schema, Repeat(0, hi));
      report(DeciderKindName(kind), tau,
             Effectiveness(kind, q, s, low, high, s, tau, {}, 4000));
    }
  }
  {
    auto schema = IntSchema(0, 1023);
    const AggregateQuery q = *AggregateQuery::Sum(*schema, 0);
    DeciderOptions opts;
    opts.gs = 1024;
    // LM_sum: q_s = 200000 built from values of 1000.
    const double tau_lm = *TauMinLmSum(1024, kEps, kDelta);
    const int64_t qs = 200000;
    const Table s = ColumnTable(schema, SumColumn(qs, 1000));
    const auto gap = static_cast<int64_t>(std::ceil(2 * tau_lm));
    const Table low = ColumnTable(schema, SumColumn(qs - gap, 1000));
    const Table high = ColumnTable(schema, SumColumn(qs + gap, 1000));
    report("lm_sum", tau_lm,
           Effectiveness(DeciderKind::kLmSum, q, s, low, high, s, tau_lm,
                         opts, 4100));

    // R2T_sum: every table keeps DS_{q,D} = 100.
    const double tau_r2t = *TauMinR2tSum(1024, 100, kEps, kDelta);
    const int64_t qs2 = 400000;
    const Table s2 = ColumnTable(schema, SumColumn(qs2, 100));
    const auto gap2 = static_cast<int64_t>(std::ceil(2 * tau_r2t));
    const Table low2 = ColumnTable(schema, SumColumn(qs2 - gap2, 100));
    const Table high2 = ColumnTable(schema, SumColumn(qs2 + gap2, 100));
    if (DownwardLocalSensitivity(q, s2) != 100 ||
        DownwardLocalSensitivity(q, low2) != 100 ||
        DownwardLocalSensitivity(q, high2) != 100) {
      return {false, "R2T tables do not have DS = 100"};
    }
    report("r2t_sum", tau_r2t,
           Effectiveness(DeciderKind::kR2tSum, q, s2, low2, high2, s2, tau_r2t,
                         opts, 4200));
  }
  parts.push_back(absl::StrFormat("floor=%.4f", floor));
  return {ok, absl::StrJoin(parts, " ")};
}

// ---------------------------------------------------------------------------
// Zero-noise oracles over every multiset of at most six values in [0, 7].

void Multisets(int64_t lo, int64_t hi, size_t max_len,
               std::vector<int64_t>& cur,
               std::vector<std::vector<int64_t>>& out) {
  out.push_back(cur);
  if (cur.size() == max_len) return;
  const int64_t start = cur.empty() ? lo : cur.back();
  for (int64_t v = start; v <= hi; ++v) {
    cur.push_back(v);
    Multisets(lo, hi, max_len, cur, out);
    cur.pop_back();
  }
}

struct Matching {
  std::vector<int64_t> values;  // sorted
};

Matching Filter(const std::vector<int64_t>& all, int64_t min_value) {
  Matching m;
  for (int64_t v : all) {
    if (v >= min_value) m.values.push_back(v);
  }
  std::sort(m.values.begin(), m.values.end());
  return m;
}

int64_t SumAtMost(const Matching& m, int64_t t) {
  int64_t s = 0;
  for (int64_t v : m.values) {
    if (v <= t) s += v;
  }
  return s;
}

int64_t CountAtMost(const Matching& m, double x) {
  int64_t c = 0;
  for (int64_t v : m.values) c += static_cast<double>(v) <= x;
  return c;
}

int64_t CountAtLeast(const Matching& m, double x) {
  int64_t c = 0;
  for (int64_t v : m.values) c += static_cast<double>(v) >= x;
  return c;
}

int64_t SumOf(const Matching& m) {
  int64_t s = 0;
  for (int64_t v : m.values) s += v;
  return s;
}

int64_t LowerMedian(const Matching& m) {
  return m.values[(m.values.size() - 1) / 2];
}

bool Inside(double x, double l, double r) { return l < x && x < r; }

Verdict ZeroNoiseOracles() {
  constexpr int64_t kLo = 0;
  constexpr int64_t kHi = 7;
  auto schema = IntSchema(kLo, kHi);
  std::vector<std::vector<int64_t>> family;
  std::vector<int64_t> cur;
  Multisets(kLo, kHi, 6, cur, family);
  std::vector<Table> tables;
  tables.reserve(family.size());
  for (const auto& f : family) tables.push_back(ColumnTable(schema, f));

  const std::vector<std::vector<int64_t>> synth_values = {
      {3}, {1, 5, 7}, {0, 0, 2, 6, 7, 7}, {4, 4, 4, 4}};
  std::vector<Table> synths;
  for (const auto& s : synth_values) synths.push_back(ColumnTable(schema, s));
  const double taus[] = {0.5, 1, 2.5, 6};
  const double epsilons[] = {0.5, 4, 50};
  const int64_t filters[] = {kLo, 2};  // v >= filter
  constexpr double kBeta = 0.05;
  constexpr double kTheta = 0.95;
  constexpr int kLadder = 3;  // ceil(log2 7)

  int64_t checked = 0;
  int64_t mismatches = 0;
  std::string first_mismatch;
  NoiseSource zero(RandomSource(0, 0), NoiseMode::kZeroNoise);

  auto check = [&](DeciderKind kind, const DeciderRequest& req,
                   std::optional<int> expected, const std::string& where) {
    ++checked;
    absl::StatusOr<Outcome> got = DecideOnce(kind, req, zero);
    const bool same = expected.has_value()
                          ? (got.ok() && got->o == *expected)
                          : !got.ok();
    if (!same) {
      ++mismatches;
      if (first_mismatch.empty()) {
        first_mismatch = absl::StrCat(
            where, " got ",
            got.ok() ? absl::StrCat(got->o) : std::string(got.status().message()),
            " want ", expected ? absl::StrCat(*expected) : "error");
      }
    }
  };

  for (int64_t filter : filters) {
    const std::string where_clause =
        filter == kLo ? "" : absl::StrCat(" WHERE v >= ", filter);
    const AggregateQuery q_count =
        MustQuery("SELECT COUNT(*) FROM t" + where_clause, *schema);
    const AggregateQuery q_sum =
        MustQuery("SELECT SUM(v) FROM t" + where_clause, *schema);
    const AggregateQuery q_med =
        MustQuery("SELECT MEDIAN(v) FROM t" + where_clause, *schema);
    for (size_t si = 0; si < synths.size(); ++si) {
      const Matching ms = Filter(synth_values[si], filter);
      if (ms.values.empty()) continue;
      for (size_t ti = 0; ti < tables.size(); ++ti) {
        const Matching m = Filter(family[ti], filter);
        const auto n = static_cast<int64_t>(m.values.size());
        for (double tau : taus) {
          for (double eps : epsilons) {
            DeciderRequest req;
            req.data = &tables[ti];
            req.synthetic = &synths[si];
            req.tau = TauSpec::Absolute(tau);
            req.epsilon = Eps(eps);
            const std::string where = absl::StrCat(
                "D={", absl::StrJoin(family[ti], ","), "} Ds#", si,
                " filter>=", filter, " tau=", tau, " eps=", eps);

            // COUNT: both Laplace and both EM variants reduce to membership.
            {
              req.query = &q_count;
              const double qs = static_cast<double>(ms.values.size());
              const int want = std::fabs(static_cast<double>(n) - qs) < tau;
              check(DeciderKind::kLmCount, req, want, "lm_count " + where);
              check(DeciderKind::kEmCount, req, want, "em_count " + where);
              check(DeciderKind::kEmCountNaive, req, want,
                    "em_count_naive " + where);
            }
            // SUM.
            {
              req.query = &q_sum;
              const double qs = static_cast<double>(SumOf(ms));
              const double l = qs - tau;
              const double r = qs + tau;
              const int lm = std::fabs(static_cast<double>(SumOf(m)) - qs) < tau;
              check(DeciderKind::kLmSum, req, lm, "lm_sum " + where);

              double est = static_cast<double>(SumAtMost(m, 0));
              for (int j = 1; j <= kLadder; ++j) {
                const double t = std::ldexp(1.0, j);
                const double shift =
                    t * kLadder / eps * std::log(kLadder / kBeta);
                est = std::max(
                    est, static_cast<double>(SumAtMost(m, int64_t{1} << j)) -
                             shift);
              }
              check(DeciderKind::kR2tSum, req, Inside(est, l, r) ? 1 : 0,
                    "r2t_sum " + where);

              int cap_private = kLadder;
              for (int j = 1; j <= kLadder; ++j) {
                if (static_cast<double>(CountAtMost(m, std::ldexp(1.0, j))) >=
                    kTheta * static_cast<double>(n)) {
                  cap_private = j;
                  break;
                }
              }
              for (bool private_bound : {false, true}) {
                const int cap = private_bound ? cap_private : kLadder;
                const auto top =
                    static_cast<double>(SumAtMost(m, int64_t{1} << cap));
                const int want = top >= r ? 0 : (top >= l + 1 ? 1 : 0);
                req.options.svt_private_ds_bound = private_bound;
                check(DeciderKind::kSvtSum, req, want,
                      absl::StrCat(private_bound ? "svt_sum " : "svt_plain ",
                                   where));
              }
              req.options = DeciderOptions();
            }
            // MEDIAN.
            {
              req.query = &q_med;
              const double qs = static_cast<double>(LowerMedian(ms));
              const double l = qs - tau;
              const double r = qs + tau;
              const auto m_half = static_cast<int64_t>(
                  std::ceil(static_cast<double>(n) / 2));
              const int hist = (CountAtMost(m, l) >= m_half ||
                                CountAtLeast(m, r) >= m_half)
                                   ? 0
                                   : 1;
              check(DeciderKind::kHistMed, req, hist, "hist_med " + where);

              std::optional<int> em;
              if (n > 0) {
                double best = -1e300;
                int64_t arg = kLo;
                for (int64_t e = kLo; e <= kHi; ++e) {
                  int64_t rank = 0;
                  for (int64_t v : m.values) rank += v < e;
                  const double score =
                      -std::fabs(static_cast<double>(rank) -
                                 static_cast<double>(n) / 2);
                  if (score > best) {
                    best = score;
                    arg = e;
                  }
                }
                em = Inside(static_cast<double>(arg), l, r) ? 1 : 0;
              }
              check(DeciderKind::kEmMed, req, em, "em_med " + where);
            }
          }
        }
      }
    }
  }
  std::string detail =
      absl::StrCat(family.size(), " tables, ", checked, " decisions, ",
                   mismatches, " mismatches");
  if (!first_mismatch.empty()) absl::StrAppend(&detail, "; first: ", first_mismatch);
  return {mismatches == 0 && family.size() == 3003, detail};
}

// ---------------------------------------------------------------------------

struct RatioCase {
  std::string name;
  DeciderKind kind;
  std::shared_ptr<const Schema> schema;
  AggregateQuery query;
  std::vector<int64_t> d;
  std::vector<int64_t> neighbor;
  std::vector<int64_t> synthetic;
  double tau;
  DeciderOptions options;
  double noise_factor = 1.0;
};

Verdict DpRatio() {
  constexpr int64_t kTrials = 200000;
  constexpr double kEps = 1.0;
  auto count_schema = IntSchema(0, 1);
  auto sum_schema = IntSchema(0, 8);  // GS_q = 8
  const AggregateQuery count = AggregateQuery::Count();
  const AggregateQuery sum = *AggregateQuery::Sum(*sum_schema, 0);
  const AggregateQuery median = *AggregateQuery::Median(*sum_schema, 0);

  std::vector<int64_t> lm_sum_d = {3, 5, 8, 2, 7};
  std::vector<int64_t> lm_sum_n = lm_sum_d;
  lm_sum_n.push_back(8);
  std::vector<int64_t> lm_sum_s = lm_sum_d;
  lm_sum_s.push_back(1);
  std::vector<int64_t> hist_d = Repeat(1, 5);
  hist_d.push_back(4);
  for (int i = 0; i < 4; ++i) hist_d.push_back(7);
  std::vector<int64_t> hist_n = hist_d;
  hist_n.push_back(4);
  DeciderOptions plain;
  plain.svt_private_ds_bound = false;

  std::vector<RatioCase> cases = {
      {"lm_count", DeciderKind::kLmCount, count_schema, count, Repeat(0, 10),
       Repeat(0, 11), Repeat(0, 12), 2, {}},
      {"em_count_naive", DeciderKind::kEmCountNaive, count_schema, count,
       Repeat(0, 10), Repeat(0, 11), Repeat(0, 12), 2, {}},
      {"em_count", DeciderKind::kEmCount, count_schema, count, Repeat(0, 10),
       Repeat(0, 11), Repeat(0, 12), 2, {}},
      {"lm_sum", DeciderKind::kLmSum, sum_schema, sum, lm_sum_d, lm_sum_n,
       lm_sum_s, 6, {}},
      {"r2t_sum", DeciderKind::kR2tSum, sum_schema, sum, Repeat(8, 20),
       Repeat(8, 21), SumColumn(62, 8), 30, {}},
      {"svt_sum", DeciderKind::kSvtSum, sum_schema, sum, Repeat(8, 20),
       Repeat(8, 21), Repeat(8, 20), 24, {}},
      {"svt_sum_plain", DeciderKind::kSvtSum, sum_schema, sum, Repeat(8, 20),
       Repeat(8, 21), Repeat(8, 20), 24, plain},
      {"em_med", DeciderKind::kEmMed, sum_schema, median,
       {1, 2, 3, 4, 5, 6, 7}, {1, 2, 3, 4, 5, 6}, {4}, 1.5, {}},
      {"hist_med", DeciderKind::kHistMed, sum_schema, median, hist_d, hist_n,
       {4}, 2, {}},
  };
  RatioCase fault{"lm_count_half_noise", DeciderKind::kLmCount, count_schema,
                  count, Repeat(0, 10), Repeat(0, 11), Repeat(0, 1000), 988.5,
                  {}};
  fault.noise_factor = 0.5;
  cases.push_back(fault);

  bool ok = true;
  std::vector<std::string> parts;
  uint64_t seed = 6000;
  for (const RatioCase& c : cases) {
    const Table d = ColumnTable(c.schema, c.d);
    const Table n = ColumnTable(c.schema, c.neighbor);
    const Table s = ColumnTable(c.schema, c.synthetic);
    TrialPlan plan =
        BasePlan(c.kind, c.query, d, s, c.tau, kEps, kTrials, seed++);
    plan.options = c.options;
    plan.noise_scale_factor = c.noise_factor;
    absl::StatusOr<DpRatioResult> r = DpRatioCheck(plan, n);
    if (!r.ok()) return {false, absl::StrCat(c.name, ": ", r.status().message())};
    const bool expect_pass = c.noise_factor == 1.0;
    ok = ok && r->passes == expect_pass;
    parts.push_back(absl::StrFormat("%s=%.3f/%.3f%s", c.name, r->ratio,
                                    r->bound, r->passes ? "" : "(exceeds)"));
  }
  return {ok, absl::StrJoin(parts, " ")};
}

Verdict R2tCoverage() {
  auto schema = IntSchema(0, 1023);
  const AggregateQuery q = *AggregateQuery::Sum(*schema, 0);
  std::vector<int64_t> values;
  for (int64_t i = 0; i < 500; ++i) values.push_back((i * 37) % 101);
  const Table t = ColumnTable(schema, values);
  constexpr int64_t kGs = 1024;
  constexpr double kEps = 0.5;
  constexpr double kBeta = 0.05;
  constexpr int kTrials = 2000;
  int64_t ds = 0;
  for (int64_t v : values) ds = std::max(ds, v);
  int64_t qd = 0;
  for (int64_t v : values) qd += v;
  const double lg = std::log2(static_cast<double>(kGs));
  const double width = 4 * lg * std::log(lg / kBeta) * ds / kEps;
  int hits = 0;
  for (int i = 0; i < kTrials; ++i) {
    NoiseSource noise(RandomSource(7000, static_cast<uint64_t>(i)));
    const double est = *R2TEstimate(q, t, kGs, Eps(kEps), kBeta, noise);
    hits += est <= static_cast<double>(qd) &&
            est >= static_cast<double>(qd) - width;
  }
  const double freq = static_cast<double>(hits) / kTrials;
  return {freq >= 1 - kBeta - 0.03,
          absl::StrFormat("coverage %.4f (need >= %.2f), q(D)=%d width=%.1f",
                          freq, 1 - kBeta - 0.03, qd, width)};
}

Verdict EpsilonNonMonotone() {
  constexpr double kQs = 100;
  constexpr double kTau = 10;
  constexpr double kQd = kQs + kTau + 1;  // r + 1
  std::vector<double> errs;
  bool matches_oracle = true;
  for (int i = 1; i <= 20; ++i) {
    const double eps = 0.05 * i;
    const double e = LmCountErrorProfile(kQd, kQs, kTau, Eps(eps)).error_value;
    if (std::fabs(e - LaplaceWrongSide(kQd, kQs, kTau, 1 / eps)) > 1e-12) {
      matches_oracle = false;
    }
    errs.push_back(e);
  }
  std::optional<size_t> rise;
  std::optional<size_t> fall;
  for (size_t i = 0; i + 1 < errs.size(); ++i) {
    if (!rise && errs[i + 1] > errs[i]) rise = i;
    if (rise && i > *rise && errs[i + 1] < errs[i]) {
      fall = i;
      break;
    }
  }
  const bool ok = matches_oracle && rise.has_value() && fall.has_value();
  std::vector<std::string> shown;
  for (double e : errs) shown.push_back(absl::StrFormat("%.4f", e));
  return {ok, absl::StrCat("errors over eps=0.05..1: ",
                           absl::StrJoin(shown, ","))};
}

// ---------------------------------------------------------------------------

Verdict SensitivitySuites() {
  uint64_t state = 0x5eed;
  auto next = [&state](int64_t lo, int64_t hi) {
    state = Mix64(state + 0x9E3779B97F4A7C15ULL);
    return lo + static_cast<int64_t>(state % static_cast<uint64_t>(hi - lo + 1));
  };

  // Naive score.
  int64_t naive_cases = 0;
  double naive_max = 0;
  for (int i = 0; i < 5000; ++i) {
    const double qs = static_cast<double>(next(0, 60));
    const double tau = 0.5 * static_cast<double>(next(1, 30));
    const double qd = static_cast<double>(next(0, 60));
    for (int o = 0; o < 2; ++o) {
      naive_max = std::max(naive_max,
                           std::fabs(ScoreUNaive(qd, qs, tau, o) -
                                     ScoreUNaive(qd + 1, qs, tau, o)));
      ++naive_cases;
    }
  }

  // Piecewise score: worst ratio to 1/(2 tau), and whether it is attained.
  int64_t prime_cases = 0;
  double prime_ratio = 0;
  bool attained = false;
  for (int i = 0; i < 5000; ++i) {
    const double qs = static_cast<double>(next(0, 80));
    const double tau = 0.25 * static_cast<double>(next(2, 60));
    const double qd = static_cast<double>(next(0, 80));
    for (int o = 0; o < 2; ++o) {
      const double diff = std::fabs(ScoreUPrime(qd, qs, tau, o) -
                                    ScoreUPrime(qd + 1, qs, tau, o));
      const double ratio = diff * 2 * tau;
      prime_ratio = std::max(prime_ratio, ratio);
      if (std::fabs(ratio - 1) < 1e-9) attained = true;
      ++prime_cases;
    }
  }

  // Median score over neighbours obtained by deleting a row.
  int64_t med_cases = 0;
  double med_max = 0;
  auto schema = IntSchema(0, 15);
  const AggregateQuery median = *AggregateQuery::Median(*schema, 0);
  while (med_cases < 2000) {
    std::vector<int64_t> v;
    const int64_t n = next(1, 20);
    for (int64_t i = 0; i < n; ++i) v.push_back(next(0, 15));
    const Table t = ColumnTable(schema, v);
    absl::StatusOr<MedianScoreTable> full = MedianScoreTable::Build(median, t);
    if (!full.ok()) return {false, "median score table failed"};
    for (size_t drop = 0; drop < v.size(); ++drop) {
      std::vector<int64_t> w = v;
      w.erase(w.begin() + static_cast<ptrdiff_t>(drop));
      // Scores recomputed from the definition on the smaller table.
      for (int64_t e = 0; e <= 15; ++e) {
        int64_t rank = 0;
        for (int64_t x : w) rank += x < e;
        const double s_small =
            -std::fabs(static_cast<double>(rank) -
                       static_cast<double>(w.size()) / 2);
        med_max = std::max(
            med_max, std::fabs(full->scores()[static_cast<size_t>(e)] - s_small));
      }
      ++med_cases;
    }
  }

  // Truncated sum: monotone in t, bounded by q(D), exact once t >= DS, and
  // moving by at most t when one row is removed.
  int64_t trunc_cases = 0;
  bool trunc_ok = true;
  auto sum_schema = IntSchema(0, 31);
  const AggregateQuery sum = *AggregateQuery::Sum(*sum_schema, 0);
  for (int i = 0; i < 300; ++i) {
    std::vector<int64_t> v;
    const int64_t n = next(1, 12);
    for (int64_t k = 0; k < n; ++k) v.push_back(next(0, 31));
    const Table t = ColumnTable(sum_schema, v);
    int64_t total = 0;
    int64_t ds = 0;
    for (int64_t x : v) {
      total += x;
      ds = std::max(ds, x);
    }
    int64_t prev = -1;
    for (int64_t th = 0; th <= 32; ++th) {
      const int64_t got = *TruncatedSum(sum, t, th);
      int64_t want = 0;
      for (int64_t x : v) want += x <= th ? x : 0;
      if (got != want || got < prev || got > total ||
          (th >= ds && got != total)) {
        trunc_ok = false;
      }
      prev = got;
      for (size_t drop = 0; drop < v.size(); ++drop) {
        const int64_t smaller = *TruncatedSum(sum, t.WithRowRemoved(drop), th);
        if (std::llabs(got - smaller) > th) trunc_ok = false;
        ++trunc_cases;
      }
    }
  }

  const bool ok = naive_cases >= 1000 && naive_max <= 1 &&
                  prime_cases >= 1000 && prime_ratio <= 1 + 1e-9 && attained &&
                  med_cases >= 1000 && med_max <= 1 && trunc_cases >= 1000 &&
                  trunc_ok;
  return {ok, absl::StrFormat(
                  "naive %d cases max %.3g; u' %d cases max %.6g x 1/(2tau) "
                  "%s; median %d cases max %.3g; truncation %d cases %s",
                  naive_cases, naive_max, prime_cases, prime_ratio,
                  attained ? "attained" : "never attained", med_cases, med_max,
                  trunc_cases, trunc_ok ? "ok" : "violated")};
}

// ---------------------------------------------------------------------------

std::shared_ptr<const Schema> TrendSchema() {
  std::vector<Attribute> attrs;
  attrs.push_back({"age", *AttributeDomain::Integer(0, 99)});
  attrs.push_back({"income", *AttributeDomain::Integer(0, 1023)});
  return std::make_shared<const Schema>(*Schema::Create(std::move(attrs)));
}

Verdict SweepTrends() {
  bool ok = true;
  std::vector<std::string> parts;
  const SweepGrid default_grid;
  auto schema = TrendSchema();

  // Clause 1: q(D) = q(D_s), error nonincreasing in tau for every decider.
  const std::vector<std::pair<std::string, std::vector<DeciderKind>>> suites = {
      {"SELECT COUNT(*) FROM t WHERE age >= 30",
       {DeciderKind::kLmCount, DeciderKind::kEmCountNaive,
        DeciderKind::kEmCount}},
      {"SELECT SUM(income) FROM t WHERE age >= 30",
       {DeciderKind::kLmSum, DeciderKind::kR2tSum, DeciderKind::kSvtSum}},
      {"SELECT MEDIAN(income) FROM t WHERE age < 40",
       {DeciderKind::kEmMed, DeciderKind::kHistMed}},
  };
  int violations = 0;
  int series = 0;
  uint64_t gen_seed = 100;
  for (const auto& [text, kinds] : suites) {
    SyntheticPairSpec spec;
    spec.schema = schema;
    spec.query = text;
    spec.rows = 2000;
    spec.matching_rows = 600;
    spec.gap = 0;
    spec.seed = gen_seed++;
    absl::StatusOr<SyntheticPair> pair = GenSyntheticPair(spec);
    if (!pair.ok()) return {false, std::string(pair.status().message())};
    for (bool plain_svt : {false, true}) {
      SweepSpec sweep;
      sweep.grid.epsilons = {kDefaultSweepEpsilon};
      sweep.deciders = kinds;
      if (plain_svt) {
        if (pair->query.kind() != AggregateKind::kSum) continue;
        sweep.deciders = {DeciderKind::kSvtSum};
        sweep.options.svt_private_ds_bound = false;
      }
      sweep.queries.push_back({"q", pair->query});
      sweep.data = &pair->data;
      sweep.synthetic = &pair->synthetic;
      sweep.trials = 2000;
      sweep.seed = 10;
      sweep.threads = Threads();
      absl::StatusOr<std::vector<ResultRow>> rows = Sweep(sweep);
      if (!rows.ok()) return {false, std::string(rows.status().message())};
      for (size_t k = 0; k < sweep.deciders.size(); ++k) {
        const size_t g = default_grid.tau_percents.size();
        std::vector<std::string> errs;
        bool mono = true;
        for (size_t i = 0; i < g; ++i) {
          const ResultRow& row = (*rows)[k * g + i];
          errs.push_back(absl::StrFormat("%.3f", row.error));
          if (i > 0 && row.error > (*rows)[k * g + i - 1].error) mono = false;
        }
        ++series;
        if (!mono) {
          ++violations;
          parts.push_back(absl::StrCat(
              plain_svt ? "svt_sum_plain" : DeciderKindName(sweep.deciders[k]),
              " not monotone: ", absl::StrJoin(errs, ",")));
        }
      }
    }
  }
  ok = ok && violations == 0;
  parts.push_back(absl::StrCat(series, " series at eps=0.25, ", violations,
                               " increases"));

  // Clause 2: LM_count with q(D) near an endpoint. The error is largest at the
  // grid point where q(D) sits closest to an endpoint of I. With q(D) just
  // outside I at 3.2% that is 3.2% itself, one step before q(D) enters I at
  // 12.8%; with q(D) just inside at 3.2%, it is the entry point.
  auto count_schema = IntSchema(0, 1);
  const AggregateQuery count = AggregateQuery::Count();
  const Table synthetic = ColumnTable(count_schema, Repeat(0, 1000));
  for (int64_t qd : {1033, 1031}) {
    const Table data = ColumnTable(count_schema, Repeat(0, static_cast<size_t>(qd)));
    SweepSpec sweep;
    sweep.grid.epsilons = {kDefaultSweepEpsilon};
    sweep.deciders = {DeciderKind::kLmCount};
    sweep.queries.push_back({"near_edge", count});
    sweep.data = &data;
    sweep.synthetic = &synthetic;
    sweep.trials = 20000;
    sweep.seed = 11;
    sweep.threads = Threads();
    std::vector<ResultRow> rows = *Sweep(sweep);
    size_t peak = 0;
    for (size_t i = 1; i < rows.size(); ++i) {
      if (rows[i].error > rows[peak].error) peak = i;
    }
    // Grid point whose interval endpoint lies nearest q(D).
    size_t nearest = 0;
    double best = 1e300;
    for (size_t i = 0; i < rows.size(); ++i) {
      const double gap = std::fabs(std::fabs(qd - 1000.0) - rows[i].tau);
      if (gap < best) {
        best = gap;
        nearest = i;
      }
    }
    const double entry = rows.front().first_tau_pct_in_interval.value_or(-1);
    const bool adjacent =
        *rows[nearest].tau_pct == entry ||
        (nearest + 1 < rows.size() && *rows[nearest + 1].tau_pct == entry);
    const bool pass = peak == nearest && adjacent;
    ok = ok && pass;
    std::vector<std::string> errs;
    for (const ResultRow& r : rows) errs.push_back(absl::StrFormat("%.4f", r.error));
    parts.push_back(absl::StrFormat(
        "lm_count d_q=%d: errors %s, peak at %.1f%%, q(D) enters I at %.1f%%%s",
        qd - 1000, absl::StrJoin(errs, ","), *rows[peak].tau_pct, entry,
        pass ? "" : " (unexpected)"));
  }
  return {ok, absl::StrJoin(parts, "; ")};
}

// ---------------------------------------------------------------------------

struct Criterion {
  int number;
  const char* name;
  double budget_seconds;
  std::function<Verdict()> run;
};

const std::vector<Criterion>& AllCriteria() {
  static const auto* criteria = new std::vector<Criterion>{
      {1, "threshold examples", 1, ThresholdExamples},
      {2, "closed form vs Monte Carlo", 30, ClosedFormVsMonteCarlo},
      {3, "LM_count error grid", 120, LmCountErrorGrid},
      {4, "effectiveness at the bound", 120, EffectivenessAtBound},
      {5, "zero-noise oracles", 60, ZeroNoiseOracles},
      {6, "empirical DP ratio", 300, DpRatio},
      {7, "R2T coverage", 60, R2tCoverage},
      {8, "non-monotone in epsilon", 60, EpsilonNonMonotone},
      {9, "sensitivity suites", 60, SensitivitySuites},
      {10, "sweep trends", 180, SweepTrends},
  };
  return *criteria;
}

bool RunOne(const Criterion& c) {
  const auto start = std::chrono::steady_clock::now();
  Verdict v = c.run();
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  bool pass = v.pass;
  if (secs > c.budget_seconds) {
    pass = false;
    absl::StrAppend(&v.detail, absl::StrFormat("; over the %.0fs budget",
                                               c.budget_seconds));
  }
  std::printf("AC%02d %s %s (%.2fs): %s\n", c.number, pass ? "PASS" : "FAIL",
              c.name, secs, v.detail.c_str());
  std::fflush(stdout);
  return pass;
}

}  // namespace
}  // namespace pqdecide

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::fprintf(stderr, "usage: %s [--criterion N]\n", argv[0]);
      return 2;
    }
  }
  bool all_pass = true;
  bool ran = false;
  for (const auto& c : pqdecide::AllCriteria()) {
    if (only != 0 && c.number != only) continue;
    ran = true;
    all_pass = pqdecide::RunOne(c) && all_pass;
  }
  if (!ran) {
    std::fprintf(stderr, "no criterion numbered %d\n", only);
    return 2;
  }
  return all_pass ? 0 : 1;
}
