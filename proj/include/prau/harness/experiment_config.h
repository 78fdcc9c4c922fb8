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
// Experiment parameters. Values come from defaults, then an optional
// key=value file, then command-line flags.

#ifndef PRAU_HARNESS_EXPERIMENT_CONFIG_H_
#define PRAU_HARNESS_EXPERIMENT_CONFIG_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace prau::harness {

enum class ExperimentKind {
  kTheorem,
  kAccuracyCurve,
  kCollusionTable,
  kFprCurve,
  kScenario1,
  kScenario2,
  kScenario3,
};

absl::StatusOr<ExperimentKind> ParseExperimentKind(std::string_view name);
std::string_view ExperimentKindName(ExperimentKind kind);

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::kTheorem;

  std::vector<double> epsilons = {10};
  // Colluding buyers (n).
  std::vector<int64_t> buyers = {20};
  // Candidate count u for the accuracy curve and scenario 2; visitor count
  // for scenario 3.
  std::vector<int64_t> visitors = {10000};
  std::vector<int64_t> pools = {100000};
  std::vector<int64_t> accusations = {1000};
  int64_t hashes = 20;
  int64_t bloom_bits = 201000;

  int64_t replicas = 5;
  uint64_t seed = 1;
  int64_t jobs = 1;
  int64_t mc_trials = 100000;
  // Upper end of the collusion-table search.
  int64_t max_buyers = 300;

  // Scenario 1: whether the target visits the secondary site at all.
  bool visit_secondary = true;
  bool enforce_kanon = false;
  bool noiseless = false;
  bool raw = false;
  // Empty or "-" writes to stdout.
  std::string out;

  absl::Status Validate() const;
};

// Applies one key=value setting. Keys use the long flag spelling without
// dashes, e.g. "bloom-bits". List-valued keys take comma-separated values.
absl::Status ApplySetting(std::string_view key, std::string_view value,
                          ExperimentConfig& config);

// Reads a key=value file. Blank lines and lines starting with '#' are
// skipped.
absl::Status ApplyConfigFile(const std::string& path,
                             ExperimentConfig& config);

// Seed of replica i: seed XOR splitmix64(i). Replica i's seed does not depend
// on how many replicas run.
uint64_t ReplicaSeed(uint64_t seed, int64_t replica);

}  // namespace prau::harness

#endif  // PRAU_HARNESS_EXPERIMENT_CONFIG_H_
