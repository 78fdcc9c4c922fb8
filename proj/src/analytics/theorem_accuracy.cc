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

#include "prau/analytics/theorem_accuracy.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "absl/strings/str_cat.h"

namespace prau::analytics {
namespace {

// (u - 1) * log F(t) for t >= 0, with F(t) = 1 - e^{-epsilon t} / 2.
double LogCdfPowerUpper(double epsilon, double t, int64_t u) {
  return static_cast<double>(u - 1) * std::log1p(-0.5 * std::exp(-epsilon * t));
}

}  // namespace

absl::Status AccuracyParams::Validate() const {
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be positive, got ", epsilon));
  }
  if (u < 2) return absl::InvalidArgumentError("need at least two candidates");
  if (n < 1) return absl::InvalidArgumentError("need at least one colluder");
  return absl::OkStatus();
}

QuadratureSettings QuadratureSettings::UnitStep() {
  QuadratureSettings s;
  s.step = 1;
  return s;
}

absl::Status QuadratureSettings::Validate() const {
  if (!(tail_cutoff > 0)) {
    return absl::InvalidArgumentError("tail cutoff must be positive");
  }
  if (max_terms < 1) return absl::InvalidArgumentError("max_terms < 1");
  if (step < 0) return absl::InvalidArgumentError("negative step");
  if (step == 0 && !(steps_per_scale > 0)) {
    return absl::InvalidArgumentError("steps_per_scale must be positive");
  }
  return absl::OkStatus();
}

double AccuracyBreakdown::total() const { return case_1a + case_1b + case_2b; }

absl::StatusOr<AccuracyBreakdown> TheoremAccuracyBreakdown(
    const AccuracyParams& params, const QuadratureSettings& settings) {
  if (absl::Status s = params.Validate(); !s.ok()) return s;
  if (absl::Status s = settings.Validate(); !s.ok()) return s;

  const double eps = params.epsilon;
  const double n = static_cast<double>(params.n);
  const double target_step = settings.step > 0
                                 ? settings.step
                                 : 1.0 / (settings.steps_per_scale * eps);
  AccuracyBreakdown out;

  // Case 1A: y in (0, inf), midpoints (i - 1/2) dx.
  {
    const double dx = target_step;
    for (int64_t i = 1; i <= settings.max_terms; ++i) {
      const double x = (static_cast<double>(i) - 0.5) * dx;
      const double density_mass = 0.5 * eps * std::exp(-eps * x) * dx;
      if (density_mass < settings.tail_cutoff) break;
      out.case_1a += density_mass *
                     std::exp(LogCdfPowerUpper(eps, n + x, params.u));
      out.case_1a_terms = i;
    }
  }

  // Case 1B: y in (-n, 0), split into an integral number of subintervals.
  {
    const int64_t pieces = std::max<int64_t>(
        1, static_cast<int64_t>(std::ceil(n / target_step - 1e-9)));
    const double dx = n / static_cast<double>(pieces);
    for (int64_t i = 1; i <= pieces; ++i) {
      const double offset = (static_cast<double>(i) - 0.5) * dx;  // n + y
      const double y = -n + offset;
      const double density_mass = 0.5 * eps * std::exp(eps * y) * dx;
      out.case_1b +=
          density_mass * std::exp(LogCdfPowerUpper(eps, offset, params.u));
    }
    out.case_1b_terms = pieces;
  }

  // Case 2B: y < -n, exact.
  const double u = static_cast<double>(params.u);
  out.case_2b = std::exp(-eps * n - u * std::numbers::ln2 - std::log(u));
  return out;
}

absl::StatusOr<double> TheoremAccuracy(const AccuracyParams& params,
                                       const QuadratureSettings& settings) {
  absl::StatusOr<AccuracyBreakdown> b =
      TheoremAccuracyBreakdown(params, settings);
  if (!b.ok()) return b.status();
  return std::clamp(b->total(), 0.0, 1.0);
}

}  // namespace prau::analytics
