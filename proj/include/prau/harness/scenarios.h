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
// End-to-end linkage scenarios. Each call builds an isolated world (browser,
// k-anonymity server, aggregation service, colluder network) from a seed and
// drives it through tagging, linking auctions, report collection and
// inference.

#ifndef PRAU_HARNESS_SCENARIOS_H_
#define PRAU_HARNESS_SCENARIOS_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "absl/container/flat_hash_set.h"
#include "absl/status/statusor.h"
#include "prau/adversary/colluder_network.h"
#include "prau/protocol/types.h"

namespace prau::harness {

struct WorldOptions {
  uint64_t seed = 1;
  // With enforcement on, colluders pass the eligibility check through a
  // shared ad backed by adversary-run browsers and recover the UID through
  // the bid/score channel; otherwise the interest group name carries it.
  bool enforce_kanon = false;
  bool noiseless = false;
};

struct Scenario1Options {
  WorldOptions world;
  int colluders = 1;
  bool visit_secondary = true;
  // Untagged profiles that also visit the secondary site.
  int background_profiles = 3;
  SimSeconds tag_at = 0;
  SimSeconds visit_at = 2 * kHour;
};

struct Scenario1Result {
  bool linked = false;
  std::optional<SimSeconds> detection_latency;
  size_t reports_received = 0;
  // Every report at the primary site follows a secondary-site visit of the
  // tagged profile by at most an hour.
  bool consistent_with_log = true;
};

struct Scenario2Options {
  WorldOptions world;
  double epsilon = 10;
  int colluders = 15;
  int64_t candidates = 10000;
};

struct Scenario2Result {
  Uid target;
  Uid predicted;
  bool correct = false;
  size_t reports = 0;
  bool complete = false;
};

struct Scenario3Options {
  WorldOptions world;
  adversary::AttackConfig attack;
  int64_t visitors = 10000;
  // Length of the returned ranking; at least attack.accusations.
  uint64_t rank_depth = 0;
};

struct LinkageResult {
  std::vector<Uid> candidates;
  std::vector<double> scores;  // parallel to candidates
  // Best-first candidates, rank_depth long.
  std::vector<Uid> ranking;
  std::vector<Uid> accused;
  absl::flat_hash_set<Uid> truth;
  double ppv = 0;
  double fpr = 0;
  size_t correct = 0;
  size_t reports = 0;
  bool complete = false;
};

absl::StatusOr<Scenario1Result> RunScenario1(const Scenario1Options& options);
absl::StatusOr<Scenario2Result> RunScenario2(const Scenario2Options& options);
absl::StatusOr<LinkageResult> RunScenario3(const Scenario3Options& options);

// `count` distinct UIDs drawn uniformly from [0, 2^30).
std::vector<Uid> DrawDistinctUids(size_t count, Rng& rng);

}  // namespace prau::harness

#endif  // PRAU_HARNESS_SCENARIOS_H_
