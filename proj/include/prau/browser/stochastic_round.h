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

// Bid and score values leave the bidding and scoring worklets only after being
// stochastically rounded to an 8-bit exponent and 8-bit mantissa. The leading
// mantissa bit is implicit, so a positive value is (1 + f/128) * 2^e with a
// 7-bit fraction f and e in [-128, 127].

#ifndef PRAU_BROWSER_STOCHASTIC_ROUND_H_
#define PRAU_BROWSER_STOCHASTIC_ROUND_H_

#include <optional>

#include "absl/status/statusor.h"
#include "prau/protocol/types.h"

namespace prau {

struct CompactFloatParts {
  int exponent = 0;  // [-128, 127]
  int fraction = 0;  // [0, 127]
};

inline constexpr int kCompactExponentMin = -128;
inline constexpr int kCompactExponentMax = 127;
inline constexpr int kCompactFractionBits = 7;

// Positive value with the given exponent and fraction; parts must be in range.
double ComposeCompactFloat(CompactFloatParts parts);

// Splits a positive, exactly representable value. Returns nullopt otherwise.
std::optional<CompactFloatParts> DecomposeCompactFloat(double value);

bool IsCompactRepresentable(double value);

// Largest positive representable value.
double CompactFloatMax();

// Rounds to one of the two neighbouring representable values with probability
// proportional to proximity, so E[result] == x inside the representable range.
// Magnitudes beyond the range saturate at CompactFloatMax().
absl::StatusOr<double> StochasticRound(double x, Rng& rng);

}  // namespace prau

#endif  // PRAU_BROWSER_STOCHASTIC_ROUND_H_
