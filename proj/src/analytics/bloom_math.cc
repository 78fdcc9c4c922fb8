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

#include "prau/analytics/bloom_math.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace prau::analytics {
namespace {

double Bound(uint64_t m, uint64_t a, uint64_t u) {
  if (u == 0) return 0;
  if (m == 1) return 1;
  const double au = static_cast<double>(a) * static_cast<double>(u);
  const double filled = -std::expm1(au * std::log1p(-1.0 / m));
  return std::pow(filled, static_cast<double>(a));
}

}  // namespace

absl::StatusOr<double> BloomFprBound(uint64_t m, uint64_t a, uint64_t u) {
  if (m == 0) return absl::InvalidArgumentError("Bloom width m must be >= 1");
  if (a == 0) return absl::InvalidArgumentError("need at least one hash");
  return Bound(m, a, u);
}

absl::StatusOr<uint64_t> ChooseBloomM(uint64_t a, uint64_t u,
                                      double target_fpr) {
  if (!(target_fpr > 0 && target_fpr < 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("target FPR ", target_fpr, " outside (0, 1)"));
  }
  if (a == 0) return absl::InvalidArgumentError("need at least one hash");
  constexpr uint64_t kLimit = uint64_t{1} << 62;
  uint64_t hi = 1;
  while (Bound(hi, a, u) > target_fpr) {
    if (hi >= kLimit) {
      return absl::OutOfRangeError("no Bloom width below 2^62 meets target");
    }
    hi *= 2;
  }
  uint64_t lo = hi / 2;  // Bound(lo) > target, or lo == 0
  while (hi - lo > 1) {
    const uint64_t mid = lo + (hi - lo) / 2;
    if (Bound(mid, a, u) <= target_fpr) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

}  // namespace prau::analytics
