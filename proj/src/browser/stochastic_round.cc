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

#include "prau/browser/stochastic_round.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace prau {
namespace {

constexpr double kSignificandScale = 1 << (kCompactFractionBits + 1);  // 256

}  // namespace

double ComposeCompactFloat(CompactFloatParts parts) {
  const int significand = (1 << kCompactFractionBits) + parts.fraction;
  return std::ldexp(static_cast<double>(significand),
                    parts.exponent - kCompactFractionBits);
}

std::optional<CompactFloatParts> DecomposeCompactFloat(double value) {
  if (!(value > 0) || !std::isfinite(value)) return std::nullopt;
  int e = 0;
  const double m = std::frexp(value, &e);  // m in [0.5, 1)
  const double scaled = m * kSignificandScale;
  if (scaled != std::floor(scaled)) return std::nullopt;
  const int exponent = e - 1;
  if (exponent < kCompactExponentMin || exponent > kCompactExponentMax) {
    return std::nullopt;
  }
  return CompactFloatParts{exponent, static_cast<int>(scaled) -
                                         (1 << kCompactFractionBits)};
}

bool IsCompactRepresentable(double value) {
  if (value == 0) return true;
  return DecomposeCompactFloat(std::fabs(value)).has_value();
}

double CompactFloatMax() {
  return ComposeCompactFloat({kCompactExponentMax, 127});
}

absl::StatusOr<double> StochasticRound(double x, Rng& rng) {
  if (!std::isfinite(x)) {
    return absl::InvalidArgumentError(
        absl::StrCat("cannot round non-finite value ", x));
  }
  if (x == 0) return 0.0;
  const double magnitude = std::fabs(x);
  const double sign = x < 0 ? -1.0 : 1.0;
  if (magnitude >= CompactFloatMax()) return sign * CompactFloatMax();

  const double min_normal = std::ldexp(1.0, kCompactExponentMin);
  const double u = (static_cast<double>(rng() >> 11)) * 0x1.0p-53;  // [0,1)
  if (magnitude < min_normal) {
    // Between 0 and the smallest normal value, neighbours are 0 and 2^-128.
    return u < magnitude / min_normal ? sign * min_normal : 0.0;
  }
  int e = 0;
  const double scaled = std::frexp(magnitude, &e) * kSignificandScale;
  const double lower = std::floor(scaled);
  const double rounded = u < scaled - lower ? lower + 1 : lower;
  return sign * std::ldexp(rounded, e - kCompactFractionBits - 1);
}

}  // namespace prau
