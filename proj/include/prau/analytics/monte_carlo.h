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

#ifndef PRAU_ANALYTICS_MONTE_CARLO_H_
#define PRAU_ANALYTICS_MONTE_CARLO_H_

#include <cstdint>

#include "absl/status/statusor.h"

namespace prau::analytics {

enum class SamplingMethod {
  // Draws all u noisy values per trial.
  kBruteForce,
  // Draws the target's value and the maximum of the other u - 1 values
  // directly from its distribution F^{u-1}.
  kOrderStatistic,
  // Brute force when u * trials is small, order statistic otherwise.
  kAuto,
};

struct MonteCarloEstimate {
  double estimate = 0;
  double standard_error = 0;
  int64_t trials = 0;
  int64_t successes = 0;
};

// Simulates x_j = n + Y_j and x_i = Y_i (i != j), Y ~ Laplace(0, 1/epsilon),
// and counts trials where the argmax is j. Ties count as failures. n may be 0.
absl::StatusOr<MonteCarloEstimate> MonteCarloAccuracy(
    double epsilon, int64_t u, double n, int64_t trials, uint64_t seed,
    SamplingMethod method = SamplingMethod::kAuto);

}  // namespace prau::analytics

#endif  // PRAU_ANALYTICS_MONTE_CARLO_H_
