// Copyright 2026 The PrAu Linkage Lab Authors
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
#include "prau/harness/experiments.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "prau/analytics/monte_carlo.h"
#include "prau/analytics/theorem_accuracy.h"
#include "prau/harness/parallel.h"
#include "prau/harness/scenarios.h"

namespace prau::harness {
namespace {

struct Moments {
  double mean = 0;
  double variance = 0;  // sample variance; 0 for a single value
};

Moments SampleMoments(const std::vector<double>& xs) {
  Moments m;
  if (xs.empty()) return m;
  for (double x : xs) m.mean += x;
  m.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1) {
    for (double x : xs) m.variance += (x - m.mean) * (x - m.mean);
    m.variance /= static_cast<double>(xs.size() - 1);
  }
  return m;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

// First error by index, so the reported failure does not depend on thread
// scheduling.
absl::Status FirstError(const std::vector<absl::Status>& statuses) {
  for (const absl::Status& s : statuses) {
    if (!s.ok()) return s;
  }
  return absl::OkStatus();
}

absl::Status ValidateBloomGrid(const ExperimentConfig& config) {
  for (int64_t pool : config.pools) {
    for (int64_t k : config.accusations) {
      if (k > pool) {
        return absl::InvalidArgumentError(absl::StrCat(
            "accusations ", k, " exceed pool size ", pool));
      }
    }
  }
  return absl::OkStatus();
}

Scenario3Options BloomOptions(const ExperimentConfig& config, double epsilon,
                              int64_t buyers, int64_t pool, uint64_t seed,
                              uint64_t depth) {
  Scenario3Options options;
  options.world = {.seed = seed,
                   .enforce_kanon = config.enforce_kanon,
                   .noiseless = config.noiseless};
  options.attack.epsilon = epsilon;
  options.attack.colluders = static_cast<int>(buyers);
  options.attack.pool_size = static_cast<uint64_t>(pool);
  options.attack.accusations = std::min<uint64_t>(depth, pool);
  options.attack.hashes = static_cast<uint32_t>(config.hashes);
  options.attack.bloom_bits = static_cast<uint64_t>(config.bloom_bits);
  options.visitors = config.visitors.front();
  options.rank_depth = depth;
  return options;
}

// hits[i] is 1 when the i-th ranked candidate truly visited.
std::vector<uint8_t> RankingHits(const LinkageResult& result) {
  std::vector<uint8_t> hits(result.ranking.size());
  for (size_t i = 0; i < hits.size(); ++i) {
    hits[i] = result.truth.contains(result.ranking[i]) ? 1 : 0;
  }
  return hits;
}

size_t PrefixCount(const std::vector<uint8_t>& hits, size_t k) {
  size_t count = 0;
  for (size_t i = 0; i < std::min(k, hits.size()); ++i) count += hits[i];
  return count;
}

}  // namespace

absl::StatusOr<ExperimentOutput> RunTheorem(const ExperimentConfig& config) {
  Stopwatch watch;
  ExperimentOutput out;
  out.table.header = {"epsilon",  "u",        "n",       "accuracy",
                      "accuracy_unit_step",   "case_1a", "case_1b",
                      "case_2b"};
  for (double epsilon : config.epsilons) {
    for (int64_t u : config.visitors) {
      for (int64_t n : config.buyers) {
        const analytics::AccuracyParams params{.epsilon = epsilon, .u = u,
                                               .n = n};
        absl::StatusOr<analytics::AccuracyBreakdown> fine =
            analytics::TheoremAccuracyBreakdown(params);
        if (!fine.ok()) return fine.status();
        absl::StatusOr<double> unit = analytics::TheoremAccuracy(
            params, analytics::QuadratureSettings::UnitStep());
        if (!unit.ok()) return unit.status();
        absl::StatusOr<double> total = analytics::TheoremAccuracy(params);
        if (!total.ok()) return total.status();
        out.table.rows.push_back(
            {FormatDouble(epsilon), FormatInt(u), FormatInt(n),
             FormatDouble(*total), FormatDouble(*unit),
             FormatDouble(fine->case_1a), FormatDouble(fine->case_1b),
             FormatDouble(fine->case_2b)});
      }
    }
  }
  out.elapsed_seconds = watch.Seconds();
  out.summary = absl::StrCat(out.table.rows.size(), " theorem evaluations");
  return out;
}

absl::StatusOr<ExperimentOutput> RunAccuracyCurve(
    const ExperimentConfig& config) {
  Stopwatch watch;
  struct Cell {
    double epsilon;
    int64_t u;
    int64_t n;
  };
  std::vector<Cell> cells;
  for (double epsilon : config.epsilons) {
    for (int64_t u : config.visitors) {
      for (int64_t n : config.buyers) cells.push_back({epsilon, u, n});
    }
  }
  for (const Cell& cell : cells) {
    if (cell.u < 2) {
      return absl::InvalidArgumentError("accuracy curve needs u >= 2");
    }
  }

  std::vector<std::vector<std::string>> rows(cells.size());
  std::vector<absl::Status> statuses(cells.size());
  ParallelFor(static_cast<int64_t>(cells.size()), config.jobs, [&](int64_t i) {
    const Cell& cell = cells[i];
    // With no colluders every bucket is exchangeable, so the accuracy is
    // exactly 1/u.
    double numeric = 1.0 / static_cast<double>(cell.u);
    if (cell.n > 0) {
      absl::StatusOr<double> value = analytics::TheoremAccuracy(
          {.epsilon = cell.epsilon, .u = cell.u, .n = cell.n});
      if (!value.ok()) {
        statuses[i] = value.status();
        return;
      }
      numeric = *value;
    }
    absl::StatusOr<analytics::MonteCarloEstimate> mc =
        analytics::MonteCarloAccuracy(cell.epsilon, cell.u,
                                      static_cast<double>(cell.n),
                                      config.mc_trials,
                                      ReplicaSeed(config.seed, i));
    if (!mc.ok()) {
      statuses[i] = mc.status();
      return;
    }
    rows[i] = {FormatDouble(cell.epsilon), FormatInt(cell.u),
               FormatInt(cell.n),          FormatDouble(numeric),
               FormatDouble(mc->estimate), FormatDouble(mc->standard_error)};
  });
  if (absl::Status s = FirstError(statuses); !s.ok()) return s;

  ExperimentOutput out;
  out.table.header = {"epsilon",          "u",           "n",
                      "accuracy_numeric", "accuracy_mc", "mc_se"};
  out.table.rows = std::move(rows);
  out.elapsed_seconds = watch.Seconds();
  out.summary = absl::StrCat(cells.size(), " grid cells, ", config.mc_trials,
                             " Monte Carlo trials each");
  return out;
}

absl::StatusOr<ExperimentOutput> RunCollusionTable(
    const ExperimentConfig& config) {
  Stopwatch watch;
  if (absl::Status s = ValidateBloomGrid(config); !s.ok()) return s;
  for (int64_t k : config.accusations) {
    if (k < 1) {
      return absl::InvalidArgumentError(
          "collusion table needs at least one accusation");
    }
  }
  const int64_t pool = config.pools.front();
  const uint64_t depth = static_cast<uint64_t>(*std::max_element(
      config.accusations.begin(), config.accusations.end()));
  const size_t eps_count = config.epsilons.size();
  const size_t acc_count = config.accusations.size();
  const int64_t replicas = config.replicas;

  struct Found {
    std::optional<int64_t> n;
    double ppv_at_n = 0;
  };
  // found[(e * replicas + r) * acc_count + a]
  std::vector<Found> found(eps_count * replicas * acc_count);
  std::vector<absl::Status> statuses(eps_count * replicas);

  ParallelFor(static_cast<int64_t>(eps_count * replicas), config.jobs,
              [&](int64_t task) {
    const size_t e = static_cast<size_t>(task) / replicas;
    const int64_t r = task % replicas;
    const double epsilon = config.epsilons[e];
    const uint64_t seed = ReplicaSeed(config.seed, r);
    // One simulation per n serves every accusation count.
    std::map<int64_t, std::vector<uint8_t>> cache;
    auto hits_for =
        [&](int64_t n) -> absl::StatusOr<const std::vector<uint8_t>*> {
      auto it = cache.find(n);
      if (it == cache.end()) {
        absl::StatusOr<LinkageResult> result = RunScenario3(
            BloomOptions(config, epsilon, n, pool, seed, depth));
        if (!result.ok()) return result.status();
        it = cache.emplace(n, RankingHits(*result)).first;
      }
      return &it->second;
    };
    for (size_t a = 0; a < acc_count; ++a) {
      const size_t k = static_cast<size_t>(config.accusations[a]);
      std::optional<double> last_ppv;
      auto passes = [&](int64_t n) -> absl::StatusOr<bool> {
        absl::StatusOr<const std::vector<uint8_t>*> hits = hits_for(n);
        if (!hits.ok()) return hits.status();
        last_ppv = static_cast<double>(PrefixCount(**hits, k)) /
                   static_cast<double>(k);
        return *last_ppv > kTargetPpv;
      };
      int64_t lo = 0;
      int64_t hi = 1;
      bool reached = false;
      while (true) {
        absl::StatusOr<bool> ok = passes(hi);
        if (!ok.ok()) {
          statuses[task] = ok.status();
          return;
        }
        if (*ok) {
          reached = true;
          break;
        }
        lo = hi;
        if (hi >= config.max_buyers) break;
        hi = std::min(hi * 2, config.max_buyers);
      }
      Found& slot = found[(e * replicas + r) * acc_count + a];
      if (!reached) continue;
      while (hi - lo > 1) {
        const int64_t mid = lo + (hi - lo) / 2;
        absl::StatusOr<bool> ok = passes(mid);
        if (!ok.ok()) {
          statuses[task] = ok.status();
          return;
        }
        (*ok ? hi : lo) = mid;
      }
      absl::StatusOr<bool> final_check = passes(hi);
      if (!final_check.ok()) {
        statuses[task] = final_check.status();
        return;
      }
      slot.n = hi;
      slot.ppv_at_n = *last_ppv;
    }
  });
  if (absl::Status s = FirstError(statuses); !s.ok()) return s;

  ExperimentOutput out;
  out.table.header = {"epsilon", "accusations", "mean_n", "stddev_n"};
  out.raw.header = {"epsilon", "accusations", "replica",
                    "seed",    "min_n",       "ppv_at_min_n"};
  int unreached_cells = 0;
  for (size_t e = 0; e < eps_count; ++e) {
    for (size_t a = 0; a < acc_count; ++a) {
      std::vector<double> ns;
      bool unreached = false;
      for (int64_t r = 0; r < replicas; ++r) {
        const Found& f = found[(e * replicas + r) * acc_count + a];
        out.raw.rows.push_back(
            {FormatDouble(config.epsilons[e]), FormatInt(config.accusations[a]),
             FormatInt(r), absl::StrCat(ReplicaSeed(config.seed, r)),
             f.n ? FormatInt(*f.n) : "unreached",
             f.n ? FormatDouble(f.ppv_at_n) : ""});
        if (f.n) {
          ns.push_back(static_cast<double>(*f.n));
        } else {
          unreached = true;
        }
      }
      std::vector<std::string> row = {FormatDouble(config.epsilons[e]),
                                      FormatInt(config.accusations[a])};
      if (unreached) {
        ++unreached_cells;
        row.push_back("unreached");
        row.push_back("unreached");
      } else {
        const Moments m = SampleMoments(ns);
        row.push_back(FormatDouble(m.mean));
        row.push_back(FormatDouble(std::sqrt(m.variance)));
      }
      out.table.rows.push_back(std::move(row));
    }
  }
  out.elapsed_seconds = watch.Seconds();
  out.summary = absl::StrCat(
      out.table.rows.size(), " cells over ", replicas, " replicas (pool ",
      pool, ", ", config.visitors.front(), " visitors); ", unreached_cells,
      " unreached within ", config.max_buyers, " buyers");
  return out;
}

absl::StatusOr<ExperimentOutput> RunFprCurve(const ExperimentConfig& config) {
  Stopwatch watch;
  if (absl::Status s = ValidateBloomGrid(config); !s.ok()) return s;
  const int64_t buyers = config.buyers.front();
  if (buyers < 1) return absl::InvalidArgumentError("need at least one buyer");
  const uint64_t depth = static_cast<uint64_t>(*std::max_element(
      config.accusations.begin(), config.accusations.end()));
  const size_t eps_count = config.epsilons.size();
  const size_t pool_count = config.pools.size();
  const int64_t replicas = config.replicas;

  // fpr[((e * pool_count + p) * replicas + r) * acc_count + a]
  const size_t acc_count = config.accusations.size();
  std::vector<double> fpr(eps_count * pool_count * replicas * acc_count);
  std::vector<absl::Status> statuses(eps_count * pool_count * replicas);
  ParallelFor(static_cast<int64_t>(statuses.size()), config.jobs,
              [&](int64_t task) {
    const size_t e = static_cast<size_t>(task) / (pool_count * replicas);
    const size_t p = (static_cast<size_t>(task) / replicas) % pool_count;
    const int64_t r = task % replicas;
    const int64_t pool = config.pools[p];
    absl::StatusOr<LinkageResult> result = RunScenario3(
        BloomOptions(config, config.epsilons[e], buyers, pool,
                     ReplicaSeed(config.seed, r), depth));
    if (!result.ok()) {
      statuses[task] = result.status();
      return;
    }
    const std::vector<uint8_t> hits = RankingHits(*result);
    const double negatives = static_cast<double>(result->candidates.size()) -
                             static_cast<double>(result->truth.size());
    for (size_t a = 0; a < acc_count; ++a) {
      const size_t k = static_cast<size_t>(config.accusations[a]);
      const size_t false_positives = std::min(k, hits.size()) -
                                     PrefixCount(hits, k);
      fpr[static_cast<size_t>(task) * acc_count + a] =
          negatives > 0 ? static_cast<double>(false_positives) / negatives
                        : 0.0;
    }
  });
  if (absl::Status s = FirstError(statuses); !s.ok()) return s;

  ExperimentOutput out;
  out.table.header = {"epsilon", "pool_size", "accusations", "fpr_mean",
                      "fpr_var"};
  out.raw.header = {"epsilon", "pool_size", "accusations", "replica", "seed",
                    "fpr"};
  for (size_t e = 0; e < eps_count; ++e) {
    for (size_t p = 0; p < pool_count; ++p) {
      for (size_t a = 0; a < acc_count; ++a) {
        std::vector<double> values;
        for (int64_t r = 0; r < replicas; ++r) {
          const size_t task = (e * pool_count + p) * replicas + r;
          const double v = fpr[task * acc_count + a];
          values.push_back(v);
          out.raw.rows.push_back(
              {FormatDouble(config.epsilons[e]), FormatInt(config.pools[p]),
               FormatInt(config.accusations[a]), FormatInt(r),
               absl::StrCat(ReplicaSeed(config.seed, r)), FormatDouble(v)});
        }
        const Moments m = SampleMoments(values);
        out.table.rows.push_back(
            {FormatDouble(config.epsilons[e]), FormatInt(config.pools[p]),
             FormatInt(config.accusations[a]), FormatDouble(m.mean),
             FormatDouble(m.variance)});
      }
    }
  }
  out.elapsed_seconds = watch.Seconds();
  out.summary = absl::StrCat(out.table.rows.size(), " rows with ", buyers,
                             " buyers over ", replicas, " replicas");
  return out;
}

absl::StatusOr<ExperimentOutput> RunScenario(const ExperimentConfig& config) {
  Stopwatch watch;
  const int64_t replicas = config.replicas;
  const double epsilon = config.epsilons.front();
  const int64_t buyers = config.buyers.front();
  if (buyers < 1) return absl::InvalidArgumentError("need at least one buyer");
  std::vector<std::vector<std::string>> rows(replicas);
  std::vector<CsvTable> raws(replicas);
  std::vector<absl::Status> statuses(replicas);
  std::vector<double> successes(replicas);

  ExperimentOutput out;
  switch (config.kind) {
    case ExperimentKind::kScenario1:
      out.table.header = {"replica", "seed", "linked", "detection_latency_s"};
      break;
    case ExperimentKind::kScenario2:
      out.table.header = {"replica", "seed", "target_uid", "predicted_uid",
                          "correct"};
      break;
    case ExperimentKind::kScenario3:
      if (absl::Status s = ValidateBloomGrid(config); !s.ok()) return s;
      out.table.header = {"replica",  "seed",     "epsilon",     "buyers",
                          "pool",     "visitors", "accusations", "correct",
                          "ppv",      "fpr",      "reports",     "complete"};
      out.raw.header = {"replica", "uid", "score", "accused", "visited"};
      break;
    default:
      return absl::InvalidArgumentError("not a scenario experiment");
  }

  ParallelFor(replicas, config.jobs, [&](int64_t r) {
    const uint64_t seed = ReplicaSeed(config.seed, r);
    const WorldOptions world{.seed = seed,
                             .enforce_kanon = config.enforce_kanon,
                             .noiseless = config.noiseless};
    const std::string replica = FormatInt(r);
    const std::string seed_text = absl::StrCat(seed);
    if (config.kind == ExperimentKind::kScenario1) {
      absl::StatusOr<Scenario1Result> result = RunScenario1(
          {.world = world, .colluders = static_cast<int>(buyers),
           .visit_secondary = config.visit_secondary});
      if (!result.ok()) {
        statuses[r] = result.status();
        return;
      }
      successes[r] = result->linked ? 1 : 0;
      rows[r] = {replica, seed_text, result->linked ? "yes" : "no",
                 result->detection_latency
                     ? FormatInt(*result->detection_latency)
                     : ""};
    } else if (config.kind == ExperimentKind::kScenario2) {
      absl::StatusOr<Scenario2Result> result = RunScenario2(
          {.world = world, .epsilon = epsilon,
           .colluders = static_cast<int>(buyers),
           .candidates = config.visitors.front()});
      if (!result.ok()) {
        statuses[r] = result.status();
        return;
      }
      successes[r] = result->correct ? 1 : 0;
      rows[r] = {replica, seed_text, FormatInt(result->target.value()),
                 FormatInt(result->predicted.value()),
                 result->correct ? "1" : "0"};
    } else {
      const int64_t pool = config.pools.front();
      const int64_t accusations = config.accusations.front();
      absl::StatusOr<LinkageResult> result = RunScenario3(BloomOptions(
          config, epsilon, buyers, pool, seed,
          static_cast<uint64_t>(accusations)));
      if (!result.ok()) {
        statuses[r] = result.status();
        return;
      }
      successes[r] = result->ppv;
      rows[r] = {replica,
                 seed_text,
                 FormatDouble(epsilon),
                 FormatInt(buyers),
                 FormatInt(pool),
                 FormatInt(static_cast<int64_t>(result->truth.size())),
                 FormatInt(static_cast<int64_t>(result->accused.size())),
                 FormatInt(static_cast<int64_t>(result->correct)),
                 FormatDouble(result->ppv),
                 FormatDouble(result->fpr),
                 FormatInt(static_cast<int64_t>(result->reports)),
                 result->complete ? "1" : "0"};
      if (config.raw) {
        absl::flat_hash_set<Uid> accused(result->accused.begin(),
                                         result->accused.end());
        for (size_t i = 0; i < result->candidates.size(); ++i) {
          const Uid uid = result->candidates[i];
          raws[r].rows.push_back(
              {replica, FormatInt(uid.value()),
               FormatDouble(result->scores[i]),
               accused.contains(uid) ? "1" : "0",
               result->truth.contains(uid) ? "1" : "0"});
        }
      }
    }
  });
  if (absl::Status s = FirstError(statuses); !s.ok()) return s;

  out.table.rows = std::move(rows);
  for (CsvTable& raw : raws) {
    for (auto& row : raw.rows) out.raw.rows.push_back(std::move(row));
  }
  const Moments m = SampleMoments(successes);
  out.elapsed_seconds = watch.Seconds();
  switch (config.kind) {
    case ExperimentKind::kScenario1:
      out.summary = absl::StrFormat(
          "linked in %d of %d replicas",
          static_cast<int>(
              std::lround(m.mean * static_cast<double>(replicas))),
          replicas);
      break;
    case ExperimentKind::kScenario2:
      out.summary = absl::StrFormat("correct prediction rate %.4f over %d "
                                    "replicas",
                                    m.mean, replicas);
      break;
    default:
      out.summary = absl::StrFormat("mean PPV %.5f over %d replicas", m.mean,
                                    replicas);
      break;
  }
  return out;
}

absl::StatusOr<ExperimentOutput> RunExperiment(const ExperimentConfig& config) {
  if (absl::Status s = config.Validate(); !s.ok()) return s;
  switch (config.kind) {
    case ExperimentKind::kTheorem:
      return RunTheorem(config);
    case ExperimentKind::kAccuracyCurve:
      return RunAccuracyCurve(config);
    case ExperimentKind::kCollusionTable:
      return RunCollusionTable(config);
    case ExperimentKind::kFprCurve:
      return RunFprCurve(config);
    case ExperimentKind::kScenario1:
    case ExperimentKind::kScenario2:
    case ExperimentKind::kScenario3:
      return RunScenario(config);
  }
  return absl::InvalidArgumentError("unknown experiment");
}

}  // namespace prau::harness
