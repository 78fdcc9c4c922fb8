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

#include "prau/aggregation/aggregation_service.h"

#include <cmath>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "prau/aggregation/laplace_sampler.h"

namespace prau {

AggregationService::AggregationService(AggregationOptions options)
    : options_(options), rng_(options.seed) {}

absl::StatusOr<Histogram> AggregationService::Aggregate(
    const AggregationQuery& query) {
  if (query.buckets.empty()) {
    return absl::InvalidArgumentError("aggregation query without buckets");
  }
  if (!(query.epsilon > 0) || query.epsilon > kMaxEpsilon) {
    return absl::InvalidArgumentError(absl::StrCat(
        "epsilon ", query.epsilon, " outside (0, ", kMaxEpsilon, "]"));
  }

  absl::flat_hash_set<uint64_t> batch_ids;
  batch_ids.reserve(query.reports.size());
  for (const SealedReport& report : query.reports) {
    if (consumed_.contains(report.id())) {
      return absl::FailedPreconditionError(
          absl::StrCat("report ", report.id(), " was already aggregated"));
    }
    if (!batch_ids.insert(report.id()).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("report ", report.id(), " appears twice in the batch"));
    }
  }

  absl::flat_hash_map<BucketKey, size_t> index;
  index.reserve(query.buckets.size());
  for (size_t i = 0; i < query.buckets.size(); ++i) {
    if (!index.emplace(query.buckets[i], i).second) {
      return absl::InvalidArgumentError("duplicate bucket key in query");
    }
  }

  std::vector<uint64_t> sums(query.buckets.size(), 0);
  const UnsealKey key;
  for (const SealedReport& report : query.reports) {
    for (const Contribution& c : key.Open(report)) {
      auto it = index.find(c.bucket());
      if (it != index.end()) sums[it->second] += c.value();
    }
  }

  const double scale = options_.l1 / query.epsilon;
  Histogram out;
  out.reserve(query.buckets.size());
  for (size_t i = 0; i < query.buckets.size(); ++i) {
    double value = static_cast<double>(sums[i]);
    if (options_.add_noise) value += SampleLaplaceUnchecked(scale, rng_);
    out.push_back({query.buckets[i], value});
  }
  consumed_.insert(batch_ids.begin(), batch_ids.end());
  return out;
}

}  // namespace prau
