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

#include "prau/analytics/monte_carlo.h"

#include <cmath>
#include <numbers>
#include <random>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace prau::analytics {
namespace {

constexpr int64_t kBruteForceBudget = 20'000'000;

double Open01(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

double DrawLaplace(double scale, std::mt19937_64& rng) {
  const double v = Open01(rng);
  if (v < 0.5) return scale * std::log(2 * v);
  return -scale * std::log(2 * (1 - v));
}

// Maximum of `count` iid Laplace(0, scale) values by inverting F^count.
double DrawMaxLaplace(double scale, int64_t count, std::mt19937_64& rng) {
  const double log_p = std::log(Open01(rng)) / static_cast<double>(count);
  // p = F(max) = exp(log_p).
  if (log_p < -std::numbers::ln2) return scale * (std::numbers::ln2 + log_p);
  const double upper_tail = -std::expm1(log_p);  // 1 - p
  return -scale * std::log(2 * upper_tail);
}

}  // namespace

absl::StatusOr<MonteCarloEstimate> MonteCarloAccuracy(double epsilon,
                                                      int64_t u, double n,
                                                      int64_t trials,
                                                      uint64_t seed,
                                                      SamplingMethod method) {
  if (!(epsilon > 0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be positive, got ", epsilon));
  }
  if (u < 2) return absl::InvalidArgumentError("need at least two candidates");
  if (n < 0) return absl::InvalidArgumentError("negative colluder count");
  if (trials < 1) return absl::InvalidArgumentError("need at least one trial");

  if (method == SamplingMethod::kAuto) {
    method = (u <= kBruteForceBudget / trials)
                 ? SamplingMethod::kBruteForce
                 : SamplingMethod::kOrderStatistic;
  }

  const double scale = 1.0 / epsilon;
  std::mt19937_64 rng(seed);
  int64_t successes = 0;
  for (int64_t t = 0; t < trials; ++t) {
    const double target = n + DrawLaplace(scale, rng);
    double rival = -INFINITY;
    if (method == SamplingMethod::kBruteForce) {
      for (int64_t i = 1; i < u; ++i) {
        const double x = DrawLaplace(scale, rng);
        if (x > rival) rival = x;
      }
    } else {
      rival = DrawMaxLaplace(scale, u - 1, rng);
    }
    if (target > rival) ++successes;
  }

  MonteCarloEstimate out;
  out.trials = trials;
  out.successes = successes;
  out.estimate = static_cast<double>(successes) / static_cast<double>(trials);
  out.standard_error = std::sqrt(out.estimate * (1 - out.estimate) /
                                 static_cast<double>(trials));
  return out;
}

}  // namespace prau::analytics
