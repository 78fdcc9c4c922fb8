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

// Laplace density, distribution function and the two-hypothesis posterior
// used to score Bloom-filter positions.

#ifndef PRAU_ANALYTICS_LAPLACE_H_
#define PRAU_ANALYTICS_LAPLACE_H_

#include <span>

#include "absl/status/statusor.h"

namespace prau::analytics {

class Laplace {
 public:
  static absl::StatusOr<Laplace> Create(double scale);

  double scale() const { return scale_; }
  double Pdf(double x) const;
  double LogPdf(double x) const;
  double Cdf(double x) const;

 private:
  explicit Laplace(double scale) : scale_(scale) {}
  double scale_;
};

absl::StatusOr<double> LaplacePdf(double x, double scale);
absl::StatusOr<double> LaplaceCdf(double x, double scale);

// P(true value is c | observed x) when the true value is either 0 or c and the
// noise is Laplace(0, scale): f(x - c) / (f(x) + f(x - c)).
double PosteriorNonzero(double x, double c, double scale);

// log of PosteriorNonzero, accurate when the posterior underflows.
double LogPosteriorNonzero(double x, double c, double scale);

// Sum of LogPosteriorNonzero over xs: the log of the product-of-posteriors
// likelihood that every position carries c.
double LogLikelihoodH1(std::span<const double> xs, double c, double scale);

}  // namespace prau::analytics

#endif  // PRAU_ANALYTICS_LAPLACE_H_
