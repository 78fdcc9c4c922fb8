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
// What colluders put into their aggregatable reports, and how they read the
// released histogram back.
//
// Single target: every colluder contributes the full budget to the bucket
// named by the UID, and the noisy argmax names the visitor.
//
// Many visitors: each report spreads the budget over the UID's Bloom filter
// positions. A pool candidate is scored by how strongly the released
// histogram supports "all my positions carry n contributions".

#ifndef PRAU_ADVERSARY_STRATEGIES_H_
#define PRAU_ADVERSARY_STRATEGIES_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/status/statusor.h"
#include "prau/adversary/colluder_network.h"
#include "prau/aggregation/aggregation_service.h"
#include "prau/browser/browser_engine.h"
#include "prau/protocol/types.h"

namespace prau::adversary {

enum class ReportStrategy {
  // One unit contribution; arrival of the report is the signal.
  kPresence,
  // Full budget on bucket = UID.
  kUidBucket,
  // floor(l1 / hashes) on each Bloom position of the UID.
  kBloom,
};

std::vector<ContributionRequest> Scenario2ReportStrategy(Uid uid,
                                                         double l1);

// Bucket keys 0 .. count-1 for the candidate UIDs given in order.
std::vector<BucketKey> UidBuckets(std::span<const Uid> candidates);

// Argmax of the released histogram; ties go to the lowest UID. Fails on an
// empty histogram or a bucket that is not a UID.
absl::StatusOr<Uid> Scenario2Predict(const Histogram& histogram);

// Bloom filter positions of `uid`; duplicates are possible and kept.
std::vector<uint64_t> BloomPositions(Uid uid, const AttackConfig& config);

// Per-position contribution value, floor(l1 / hashes).
uint32_t BloomContributionValue(const AttackConfig& config);

std::vector<ContributionRequest> Scenario3ReportStrategy(
    Uid uid, const AttackConfig& config);

// Buckets 0 .. bloom_bits-1.
std::vector<BucketKey> BloomBuckets(const AttackConfig& config);

// Flattens a histogram released over BloomBuckets() into a dense vector.
absl::StatusOr<std::vector<double>> DenseBloomHistogram(
    const Histogram& histogram, const AttackConfig& config);

// Log-likelihood that every Bloom position of `uid` holds
// c = colluders * BloomContributionValue(config), under Laplace(l1 / epsilon)
// noise.
double Scenario3Score(std::span<const double> dense_histogram, Uid uid,
                      const AttackConfig& config);

std::vector<double> Scenario3ScoreAll(std::span<const double> dense_histogram,
                                      std::span<const Uid> candidates,
                                      const AttackConfig& config);

// Candidates ordered by descending score, ties to the lowest UID. Returns the
// first `count` (or all, if fewer).
std::vector<Uid> RankCandidates(std::span<const Uid> candidates,
                                std::span<const double> scores, size_t count);

// The `accusations` best-scoring candidates.
std::vector<Uid> Scenario3Accuse(std::span<const Uid> candidates,
                                 std::span<const double> scores,
                                 const AttackConfig& config);

}  // namespace prau::adversary

#endif  // PRAU_ADVERSARY_STRATEGIES_H_
