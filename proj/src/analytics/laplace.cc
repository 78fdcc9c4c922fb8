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

#include "prau/analytics/laplace.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace prau::analytics {
namespace {

absl::Status CheckScale(double scale) {
  if (!(scale > 0) || !std::isfinite(scale)) {
    return absl::InvalidArgumentError(
        absl::StrCat("Laplace scale must be positive, got ", scale));
  }
  return absl::OkStatus();
}

// log(1 + e^t) without overflow.
double Softplus(double t) {
  if (t > 0) return t + std::log1p(std::exp(-t));
  return std::log1p(std::exp(t));
}

}  // namespace

absl::StatusOr<Laplace> Laplace::Create(double scale) {
  if (absl::Status s = CheckScale(scale); !s.ok()) return s;
  return Laplace(scale);
}

double Laplace::Pdf(double x) const {
  return std::exp(-std::fabs(x) / scale_) / (2 * scale_);
}

double Laplace::LogPdf(double x) const {
  return -std::fabs(x) / scale_ - std::log(2 * scale_);
}

double Laplace::Cdf(double x) const {
  if (x < 0) return 0.5 * std::exp(x / scale_);
  return 1 - 0.5 * std::exp(-x / scale_);
}

absl::StatusOr<double> LaplacePdf(double x, double scale) {
  absl::StatusOr<Laplace> d = Laplace::Create(scale);
  if (!d.ok()) return d.status();
  return d->Pdf(x);
}

absl::StatusOr<double> LaplaceCdf(double x, double scale) {
  absl::StatusOr<Laplace> d = Laplace::Create(scale);
  if (!d.ok()) return d.status();
  return d->Cdf(x);
}

double LogPosteriorNonzero(double x, double c, double scale) {
  // f(x-c) / (f(x) + f(x-c)) = 1 / (1 + exp((|x-c| - |x|) / scale)).
  return -Softplus((std::fabs(x - c) - std::fabs(x)) / scale);
}

double PosteriorNonzero(double x, double c, double scale) {
  return std::exp(LogPosteriorNonzero(x, c, scale));
}

double LogLikelihoodH1(std::span<const double> xs, double c, double scale) {
  double total = 0;
  for (double x : xs) total += LogPosteriorNonzero(x, c, scale);
  return total;
}

}  // namespace prau::analytics
