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

#ifndef PRAU_AGGREGATION_LAPLACE_SAMPLER_H_
#define PRAU_AGGREGATION_LAPLACE_SAMPLER_H_

#include "absl/status/statusor.h"
#include "prau/protocol/types.h"

namespace prau {

// Uniform draw on the open interval (0, 1) from 53 random bits.
double UniformOpen01(Rng& rng);

// Draws from Laplace(0, scale) by inverting the CDF of one uniform draw.
absl::StatusOr<double> SampleLaplace(double scale, Rng& rng);

// Unchecked variant for hot loops; `scale` must be positive.
double SampleLaplaceUnchecked(double scale, Rng& rng);

}  // namespace prau

#endif  // PRAU_AGGREGATION_LAPLACE_SAMPLER_H_
