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

#include "prau/analytics/metrics.h"

#include "absl/status/status.h"

namespace prau::analytics {

size_t CountCorrect(std::span<const Uid> accused,
                    const absl::flat_hash_set<Uid>& truth) {
  size_t hits = 0;
  for (Uid uid : accused) hits += truth.contains(uid) ? 1 : 0;
  return hits;
}

absl::StatusOr<double> Ppv(std::span<const Uid> accused,
                           const absl::flat_hash_set<Uid>& truth) {
  if (accused.empty()) {
    return absl::FailedPreconditionError(
        "PPV is undefined with no accusations");
  }
  return static_cast<double>(CountCorrect(accused, truth)) /
         static_cast<double>(accused.size());
}

double Fpr(std::span<const Uid> accused, const absl::flat_hash_set<Uid>& truth,
           uint64_t pool_size) {
  if (pool_size <= truth.size()) return 0;
  const size_t false_hits = accused.size() - CountCorrect(accused, truth);
  return static_cast<double>(false_hits) /
         static_cast<double>(pool_size - truth.size());
}

}  // namespace prau::analytics
