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
#include "prau/adversary/strategies.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "prau/analytics/laplace.h"
#include "prau/protocol/object_hash.h"

namespace prau::adversary {

std::vector<ContributionRequest> Scenario2ReportStrategy(Uid uid,
                                                         double l1) {
  return {{.bucket = {uid.value()},
           .value = static_cast<uint32_t>(std::floor(l1))}};
}

std::vector<BucketKey> UidBuckets(std::span<const Uid> candidates) {
  std::vector<BucketKey> buckets;
  buckets.reserve(candidates.size());
  for (Uid uid : candidates) buckets.push_back({uid.value()});
  return buckets;
}

absl::StatusOr<Uid> Scenario2Predict(const Histogram& histogram) {
  if (histogram.empty()) {
    return absl::InvalidArgumentError("empty histogram");
  }
  const HistogramEntry* best = nullptr;
  for (const HistogramEntry& entry : histogram) {
    if (best == nullptr || entry.value > best->value ||
        (entry.value == best->value && entry.bucket < best->bucket)) {
      best = &entry;
    }
  }
  if (absl::Uint128High64(best->bucket.value) != 0) {
    return absl::InvalidArgumentError("bucket is not a uid");
  }
  return Uid::Create(absl::Uint128Low64(best->bucket.value));
}

std::vector<uint64_t> BloomPositions(Uid uid, const AttackConfig& config) {
  std::vector<uint64_t> positions(config.hashes);
  for (uint32_t i = 0; i < config.hashes; ++i) {
    positions[i] =
        KeyedHash64(config.bloom_salt + i, uid.value()) % config.bloom_bits;
  }
  return positions;
}

uint32_t BloomContributionValue(const AttackConfig& config) {
  return static_cast<uint32_t>(std::floor(config.l1 / config.hashes));
}

std::vector<ContributionRequest> Scenario3ReportStrategy(
    Uid uid, const AttackConfig& config) {
  const uint32_t value = BloomContributionValue(config);
  std::vector<ContributionRequest> out;
  out.reserve(config.hashes);
  for (uint64_t position : BloomPositions(uid, config)) {
    out.push_back({.bucket = {position}, .value = value});
  }
  return out;
}

std::vector<BucketKey> BloomBuckets(const AttackConfig& config) {
  std::vector<BucketKey> buckets(config.bloom_bits);
  for (uint64_t i = 0; i < config.bloom_bits; ++i) buckets[i] = {i};
  return buckets;
}

absl::StatusOr<std::vector<double>> DenseBloomHistogram(
    const Histogram& histogram, const AttackConfig& config) {
  if (histogram.size() != config.bloom_bits) {
    return absl::InvalidArgumentError(
        absl::StrCat("histogram has ", histogram.size(), " buckets, expected ",
                     config.bloom_bits));
  }
  std::vector<double> dense(histogram.size());
  for (size_t i = 0; i < histogram.size(); ++i) {
    if (histogram[i].bucket.value != i) {
      return absl::InvalidArgumentError(
          absl::StrCat("bucket at index ", i, " is out of order"));
    }
    dense[i] = histogram[i].value;
  }
  return dense;
}

double Scenario3Score(std::span<const double> dense_histogram, Uid uid,
                      const AttackConfig& config) {
  const double c =
      static_cast<double>(config.colluders) * BloomContributionValue(config);
  const double scale = config.l1 / config.epsilon;
  double total = 0;
  for (uint64_t position : BloomPositions(uid, config)) {
    total += analytics::LogPosteriorNonzero(dense_histogram[position], c,
                                            scale);
  }
  return total;
}

std::vector<double> Scenario3ScoreAll(std::span<const double> dense_histogram,
                                      std::span<const Uid> candidates,
                                      const AttackConfig& config) {
  std::vector<double> scores;
  scores.reserve(candidates.size());
  for (Uid uid : candidates) {
    scores.push_back(Scenario3Score(dense_histogram, uid, config));
  }
  return scores;
}

std::vector<Uid> RankCandidates(std::span<const Uid> candidates,
                                std::span<const double> scores,
                                size_t count) {
  std::vector<size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), size_t{0});
  count = std::min(count, order.size());
  auto better = [&](size_t a, size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return candidates[a] < candidates[b];
  };
  std::partial_sort(order.begin(), order.begin() + count, order.end(),
                    better);
  std::vector<Uid> ranked;
  ranked.reserve(count);
  for (size_t i = 0; i < count; ++i) ranked.push_back(candidates[order[i]]);
  return ranked;
}

std::vector<Uid> Scenario3Accuse(std::span<const Uid> candidates,
                                 std::span<const double> scores,
                                 const AttackConfig& config) {
  return RankCandidates(candidates, scores, config.accusations);
}

}  // namespace prau::adversary
