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

#ifndef PRAU_ANALYTICS_BLOOM_MATH_H_
#define PRAU_ANALYTICS_BLOOM_MATH_H_

#include <cstdint>

#include "absl/status/statusor.h"

namespace prau::analytics {

// Noise-free false positive bound (1 - (1 - 1/m)^{a u})^a for an m-bucket
// filter with a hash functions holding u elements.
absl::StatusOr<double> BloomFprBound(uint64_t m, uint64_t a, uint64_t u);

// Smallest m whose bound is at most target_fpr, found by doubling then
// bisection.
absl::StatusOr<uint64_t> ChooseBloomM(uint64_t a, uint64_t u,
                                      double target_fpr);

}  // namespace prau::analytics

#endif  // PRAU_ANALYTICS_BLOOM_MATH_H_
