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

// Expected accuracy of the argmax predictor against one-of-u linkage: the
// target's bucket holds n + Y_j, every other bucket Y_i, all Y ~ Laplace(0,
// 1/epsilon) in units of l1. The integral
//
//   Accuracy = \int f(y) F(n + y)^{u-1} dy
//
// is split at y = -n and y = 0. The pieces on (0, inf) and (-n, 0) are
// evaluated with the midpoint rule; the piece on (-inf, -n) has the closed
// form e^{-epsilon n} / (u 2^u).

#ifndef PRAU_ANALYTICS_THEOREM_ACCURACY_H_
#define PRAU_ANALYTICS_THEOREM_ACCURACY_H_

#include <cstdint>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace prau::analytics {

struct AccuracyParams {
  double epsilon = 1;
  int64_t u = 2;  // candidate users
  int64_t n = 1;  // colluding buyers

  absl::Status Validate() const;
};

struct QuadratureSettings {
  // Case 1A stops once the density factor of a term (an upper bound on the
  // term) drops below this.
  double tail_cutoff = 1e-15;
  int64_t max_terms = 1'000'000;
  // Subinterval width. Zero picks 1 / (steps_per_scale * epsilon), i.e. a
  // fixed number of midpoints per unit of noise scale.
  double step = 0;
  double steps_per_scale = 256;

  // Unit-width subintervals with midpoints at half-integers. Only accurate
  // when the noise scale is large relative to one l1.
  static QuadratureSettings UnitStep();

  absl::Status Validate() const;
};

struct AccuracyBreakdown {
  double case_1a = 0;  // y > 0
  double case_1b = 0;  // -n < y < 0
  double case_2b = 0;  // y < -n, closed form
  int64_t case_1a_terms = 0;
  int64_t case_1b_terms = 0;

  double total() const;
};

absl::StatusOr<AccuracyBreakdown> TheoremAccuracyBreakdown(
    const AccuracyParams& params, const QuadratureSettings& settings = {});

// The breakdown total clamped to [0, 1].
absl::StatusOr<double> TheoremAccuracy(const AccuracyParams& params,
                                       const QuadratureSettings& settings = {});

}  // namespace prau::analytics

#endif  // PRAU_ANALYTICS_THEOREM_ACCURACY_H_
