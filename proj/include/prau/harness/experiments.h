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
// Experiment drivers behind the command-line tool. Each returns its CSV
// table, an optional per-replica raw table, and a short human summary.

#ifndef PRAU_HARNESS_EXPERIMENTS_H_
#define PRAU_HARNESS_EXPERIMENTS_H_

#include <string>

#include "absl/status/statusor.h"
#include "prau/harness/csv.h"
#include "prau/harness/experiment_config.h"

namespace prau::harness {

struct ExperimentOutput {
  CsvTable table;
  CsvTable raw;
  std::string summary;
  double elapsed_seconds = 0;
};

// One row per (epsilon, u, n): the accuracy from the fine-step quadrature,
// from the unit-step midpoint rule, and each quadrature piece.
absl::StatusOr<ExperimentOutput> RunTheorem(const ExperimentConfig& config);

// (epsilon, u, n, accuracy_numeric, accuracy_mc, mc_se) over the grid.
absl::StatusOr<ExperimentOutput> RunAccuracyCurve(
    const ExperimentConfig& config);

// (epsilon, accusations, mean_n, stddev_n): per replica, the smallest n whose
// PPV exceeds 0.99, found by doubling then bisection; statistics over
// replicas. Cells where some replica needs more than max_buyers read
// "unreached".
absl::StatusOr<ExperimentOutput> RunCollusionTable(
    const ExperimentConfig& config);

// (epsilon, pool_size, accusations, fpr_mean, fpr_var) with n = buyers[0].
absl::StatusOr<ExperimentOutput> RunFprCurve(const ExperimentConfig& config);

// Per-replica rows of scenario 1, 2 or 3 (picked by config.kind).
absl::StatusOr<ExperimentOutput> RunScenario(const ExperimentConfig& config);

absl::StatusOr<ExperimentOutput> RunExperiment(const ExperimentConfig& config);

// PPV threshold the collusion table searches for.
inline constexpr double kTargetPpv = 0.99;

}  // namespace prau::harness

#endif  // PRAU_HARNESS_EXPERIMENTS_H_
