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

// Trusted aggregation service: opens sealed reports, sums the requested
// buckets and releases them under the Laplace mechanism.

#ifndef PRAU_AGGREGATION_AGGREGATION_SERVICE_H_
#define PRAU_AGGREGATION_AGGREGATION_SERVICE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/container/flat_hash_set.h"
#include "absl/status/statusor.h"
#include "prau/protocol/types.h"

namespace prau {

inline constexpr double kDefaultEpsilon = 10.0;
inline constexpr double kMaxEpsilon = 64.0;

struct AggregationQuery {
  std::span<const SealedReport> reports;
  std::span<const BucketKey> buckets;
  double epsilon = kDefaultEpsilon;
};

struct HistogramEntry {
  BucketKey bucket;
  double value = 0;
};

// Same order and length as the queried bucket list.
using Histogram = std::vector<HistogramEntry>;

struct AggregationOptions {
  uint64_t seed = 0;
  // Sensitivity of one report; the noise scale is l1 / epsilon.
  double l1 = kContributionBudget;
  // Diagnostic switch; the real service always adds noise.
  bool add_noise = true;
};

class AggregationService {
 public:
  explicit AggregationService(AggregationOptions options = {});

  // Rejects the whole batch, without consuming anything, if a report id
  // repeats inside the batch or was aggregated before.
  absl::StatusOr<Histogram> Aggregate(const AggregationQuery& query);

  bool IsConsumed(uint64_t report_id) const {
    return consumed_.contains(report_id);
  }
  size_t consumed_count() const { return consumed_.size(); }

 private:
  AggregationOptions options_;
  Rng rng_;
  absl::flat_hash_set<uint64_t> consumed_;
};

}  // namespace prau

#endif  // PRAU_AGGREGATION_AGGREGATION_SERVICE_H_
