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

#ifndef PRAU_ANALYTICS_METRICS_H_
#define PRAU_ANALYTICS_METRICS_H_

#include <cstdint>
#include <span>

#include "absl/container/flat_hash_set.h"
#include "absl/status/statusor.h"
#include "prau/protocol/types.h"

namespace prau::analytics {

// |accused ∩ truth| / |accused|. Undefined (FailedPrecondition) when nobody
// is accused.
absl::StatusOr<double> Ppv(std::span<const Uid> accused,
                           const absl::flat_hash_set<Uid>& truth);

// |accused \ truth| / (pool_size - |truth|). A pool with no negatives has no
// false positives, so the rate is 0 there.
double Fpr(std::span<const Uid> accused, const absl::flat_hash_set<Uid>& truth,
           uint64_t pool_size);

size_t CountCorrect(std::span<const Uid> accused,
                    const absl::flat_hash_set<Uid>& truth);

}  // namespace prau::analytics

#endif  // PRAU_ANALYTICS_METRICS_H_
