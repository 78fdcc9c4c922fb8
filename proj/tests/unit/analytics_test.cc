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
#include <cmath>
#include <random>
#include <vector>

#include "absl/container/flat_hash_set.h"
#include "gtest/gtest.h"
#include "prau/analytics/bloom_math.h"
#include "prau/analytics/laplace.h"
#include "prau/analytics/metrics.h"
#include "prau/analytics/monte_carlo.h"
#include "prau/analytics/theorem_accuracy.h"
#include "prau/protocol/object_hash.h"

namespace prau::analytics {
namespace {

// P(Y2 - Y1 < d) for independent Laplace(0, b) noise and d >= 0: the exact
// two-candidate accuracy with d = n.
double TwoCandidateAccuracy(double d, double b) {
  return 1 - 0.5 * std::exp(-d / b) * (1 + d / (2 * b));
}

// Trapezoid evaluation of \int f(y) F(n + y)^{u-1} dy on a wide grid.
double DirectIntegral(double epsilon, int64_t u, double n) {
  const double b = 1 / epsilon;
  const double lo = -60 * b;
  const double hi = 60 * b;
  const int steps = 2'000'000;
  const double h = (hi - lo) / steps;
  double sum = 0;
  for (int i = 0; i <= steps; ++i) {
    const double y = lo + i * h;
    const double f = std::exp(-std::fabs(y) / b) / (2 * b);
    const double x = n + y;
    const double cdf =
        x < 0 ? 0.5 * std::exp(x / b) : 1 - 0.5 * std::exp(-x / b);
    const double term = f * std::pow(cdf, static_cast<double>(u - 1));
    sum += (i == 0 || i == steps) ? term / 2 : term;
  }
  return sum * h;
}

TEST(LaplaceTest, RejectsBadScale) {
  EXPECT_FALSE(Laplace::Create(0).ok());
  EXPECT_FALSE(Laplace::Create(-1).ok());
  EXPECT_FALSE(LaplacePdf(0, 0).ok());
  EXPECT_FALSE(LaplaceCdf(0, -2).ok());
}

TEST(LaplaceTest, PdfIsDerivativeOfCdf) {
  for (double scale : {0.1, 1.0, 6553.6}) {
    Laplace l = *Laplace::Create(scale);
    EXPECT_DOUBLE_EQ(l.Cdf(0), 0.5);
    EXPECT_DOUBLE_EQ(l.Pdf(0), 1 / (2 * scale));
    for (double t : {-5.0, -1.3, -0.2, 0.4, 2.0, 7.5}) {
      const double x = t * scale;
      const double h = 1e-5 * scale;
      EXPECT_NEAR((l.Cdf(x + h) - l.Cdf(x - h)) / (2 * h), l.Pdf(x),
                  1e-6 * l.Pdf(0));
      EXPECT_NEAR(l.Cdf(-x), 1 - l.Cdf(x), 1e-15);
      EXPECT_NEAR(l.LogPdf(x), std::log(l.Pdf(x)), 1e-12);
    }
  }
}

TEST(PosteriorTest, MidpointIsEvenAndTailsAreDecisive) {
  EXPECT_DOUBLE_EQ(PosteriorNonzero(5, 10, 3), 0.5);
  EXPECT_GT(PosteriorNonzero(10, 10, 1), 0.99);
  EXPECT_LT(PosteriorNonzero(0, 10, 1), 0.01);
  // Beyond both hypotheses the density ratio saturates at e^{c/b}.
  EXPECT_NEAR(PosteriorNonzero(100, 2, 1), 1 / (1 + std::exp(-2.0)), 1e-12);
  EXPECT_NEAR(PosteriorNonzero(-100, 2, 1), 1 / (1 + std::exp(2.0)), 1e-12);
}

TEST(PosteriorTest, LogMatchesDirectFormAndStaysFinite) {
  for (double x : {-3.0, 0.0, 1.0, 4.5, 9.0}) {
    EXPECT_NEAR(LogPosteriorNonzero(x, 4, 1.5),
                std::log(PosteriorNonzero(x, 4, 1.5)), 1e-12);
  }
  // c / b = 2000: the direct posterior underflows, the log does not.
  const double deep = LogPosteriorNonzero(-10, 2000, 1);
  EXPECT_TRUE(std::isfinite(deep));
  EXPECT_NEAR(deep, -2000, 1e-9);
}

TEST(PosteriorTest, LikelihoodIsSumOfLogPosteriors) {
  const std::vector<double> xs = {0.3, 5.0, -2.0, 11.0};
  double expected = 0;
  for (double x : xs) expected += LogPosteriorNonzero(x, 6, 2);
  EXPECT_DOUBLE_EQ(LogLikelihoodH1(xs, 6, 2), expected);
  EXPECT_EQ(LogLikelihoodH1({}, 6, 2), 0);
}

TEST(TheoremAccuracyTest, ValidatesInputs) {
  EXPECT_FALSE(TheoremAccuracy({.epsilon = 0, .u = 10, .n = 1}).ok());
  EXPECT_FALSE(TheoremAccuracy({.epsilon = 1, .u = 1, .n = 1}).ok());
  EXPECT_FALSE(TheoremAccuracy({.epsilon = 1, .u = 10, .n = 0}).ok());
  QuadratureSettings bad;
  bad.step = -1;
  EXPECT_FALSE(TheoremAccuracy({.epsilon = 1, .u = 10, .n = 1}, bad).ok());
}

TEST(TheoremAccuracyTest, MatchesExactTwoCandidateForm) {
  for (auto [eps, n] : std::vector<std::pair<double, int64_t>>{
           {1, 1}, {0.5, 3}, {2, 1}, {0.1, 4}}) {
    EXPECT_NEAR(*TheoremAccuracy({.epsilon = eps, .u = 2, .n = n}),
                TwoCandidateAccuracy(static_cast<double>(n), 1 / eps), 2e-6)
        << eps << " " << n;
  }
}

TEST(TheoremAccuracyTest, MatchesIndependentIntegration) {
  for (auto [eps, u, n] : std::vector<std::tuple<double, int64_t, int64_t>>{
           {1, 1000, 13}, {0.5, 50, 6}, {10, 10000, 2}}) {
    EXPECT_NEAR(*TheoremAccuracy({.epsilon = eps, .u = u, .n = n}),
                DirectIntegral(eps, u, static_cast<double>(n)), 1e-5)
        << eps << " " << u << " " << n;
  }
}

TEST(TheoremAccuracyTest, ReferenceValues) {
  EXPECT_NEAR(*TheoremAccuracy({.epsilon = 10, .u = 1'000'000, .n = 2}),
              0.99598, 5e-5);
  EXPECT_NEAR(*TheoremAccuracy({.epsilon = 1, .u = 1000, .n = 13}), 0.99565,
              5e-5);
}

TEST(TheoremAccuracyTest, BreakdownPiecesAddUp) {
  const AccuracyParams p{.epsilon = 1, .u = 100, .n = 4};
  AccuracyBreakdown b = *TheoremAccuracyBreakdown(p);
  EXPECT_GT(b.case_1a, 0);
  EXPECT_GT(b.case_1b, 0);
  EXPECT_NEAR(b.case_2b, std::exp(-4.0) / (100 * std::pow(2.0, 100)), 1e-40);
  EXPECT_DOUBLE_EQ(b.total(), b.case_1a + b.case_1b + b.case_2b);
  EXPECT_GT(b.case_1a_terms, 0);
}

TEST(TheoremAccuracyTest, MonotoneInEveryParameter) {
  double prev = 0;
  for (int64_t n = 1; n <= 20; ++n) {
    const double a = *TheoremAccuracy({.epsilon = 1, .u = 1000, .n = n});
    EXPECT_GT(a, prev);
    EXPECT_LE(a, 1);
    prev = a;
  }
  prev = 1;
  for (int64_t u : {2, 10, 100, 1000, 10000}) {
    const double a = *TheoremAccuracy({.epsilon = 1, .u = u, .n = 5});
    EXPECT_LT(a, prev);
    prev = a;
  }
  prev = 0;
  for (double eps : {0.1, 0.5, 1.0, 2.0, 10.0}) {
    const double a = *TheoremAccuracy({.epsilon = eps, .u = 1000, .n = 2});
    EXPECT_GT(a, prev);
    prev = a;
  }
}

TEST(MonteCarloTest, AgreesWithExactTwoCandidateForm) {
  MonteCarloEstimate mc = *MonteCarloAccuracy(1, 2, 1, 1'000'000, 99);
  const double exact = TwoCandidateAccuracy(1, 1);
  EXPECT_EQ(mc.trials, 1'000'000);
  EXPECT_NEAR(mc.estimate, exact, 4 * mc.standard_error);
  EXPECT_NEAR(mc.standard_error,
              std::sqrt(exact * (1 - exact) / 1'000'000), 1e-5);
}

TEST(MonteCarloTest, SamplingMethodsAgreeWithTheorem) {
  const AccuracyParams p{.epsilon = 1, .u = 200, .n = 5};
  const double theory = *TheoremAccuracy(p);
  for (SamplingMethod m :
       {SamplingMethod::kBruteForce, SamplingMethod::kOrderStatistic}) {
    MonteCarloEstimate mc = *MonteCarloAccuracy(1, 200, 5, 100'000, 7, m);
    EXPECT_NEAR(mc.estimate, theory,
                4 * std::sqrt(theory * (1 - theory) / 100'000));
  }
}

TEST(MonteCarloTest, NoColludersIsUniformGuess) {
  for (int64_t u : {2, 10, 100}) {
    MonteCarloEstimate mc = *MonteCarloAccuracy(1, u, 0, 200'000, 5);
    const double p = 1.0 / u;
    EXPECT_NEAR(mc.estimate, p, 4 * std::sqrt(p * (1 - p) / 200'000)) << u;
  }
}

TEST(MonteCarloTest, DeterministicPerSeedAndValidated) {
  EXPECT_EQ(MonteCarloAccuracy(1, 50, 3, 10'000, 1)->successes,
            MonteCarloAccuracy(1, 50, 3, 10'000, 1)->successes);
  EXPECT_FALSE(MonteCarloAccuracy(0, 50, 3, 10, 1).ok());
  EXPECT_FALSE(MonteCarloAccuracy(1, 1, 3, 10, 1).ok());
  EXPECT_FALSE(MonteCarloAccuracy(1, 50, -1, 10, 1).ok());
  EXPECT_FALSE(MonteCarloAccuracy(1, 50, 3, 0, 1).ok());
}

TEST(BloomMathTest, BoundValues) {
  EXPECT_NEAR(*BloomFprBound(201000, 20, 10000), 9.7895e-5, 1e-8);
  EXPECT_DOUBLE_EQ(*BloomFprBound(1, 1, 1), 1);
  EXPECT_DOUBLE_EQ(*BloomFprBound(100, 3, 0), 0);
  EXPECT_FALSE(BloomFprBound(0, 1, 1).ok());
  EXPECT_FALSE(BloomFprBound(10, 0, 1).ok());
}

TEST(BloomMathTest, ChooseMIsTheSmallestWidthMeetingTarget) {
  const uint64_t m = *ChooseBloomM(20, 10000, 1e-4);
  EXPECT_LE(*BloomFprBound(m, 20, 10000), 1e-4);
  EXPECT_GT(*BloomFprBound(m - 1, 20, 10000), 1e-4);
  EXPECT_NEAR(static_cast<double>(m), 201000, 0.01 * 201000);
  EXPECT_FALSE(ChooseBloomM(0, 10, 0.1).ok());
}

TEST(BloomMathTest, BoundTracksSimulatedFilter) {
  const uint64_t m = 2000;
  const uint64_t a = 3;
  const uint64_t u = 300;
  std::vector<bool> bits(m);
  for (uint64_t x = 0; x < u; ++x) {
    for (uint64_t i = 0; i < a; ++i) bits[KeyedHash64(i, x) % m] = true;
  }
  int positives = 0;
  const int queries = 200'000;
  for (int q = 0; q < queries; ++q) {
    bool all = true;
    for (uint64_t i = 0; i < a; ++i) {
      all = all && bits[KeyedHash64(i, 1'000'000 + q) % m];
    }
    positives += all;
  }
  const double bound = *BloomFprBound(m, a, u);
  EXPECT_NEAR(static_cast<double>(positives) / queries, bound, 0.15 * bound);
}

std::vector<Uid> Uids(std::initializer_list<uint64_t> vs) {
  std::vector<Uid> out;
  for (uint64_t v : vs) out.push_back(*Uid::Create(v));
  return out;
}

TEST(MetricsTest, PpvAndFpr) {
  const std::vector<Uid> truth_list = Uids({1, 2, 3, 4});
  const absl::flat_hash_set<Uid> truth(truth_list.begin(), truth_list.end());
  const std::vector<Uid> accused = Uids({1, 2, 3, 9});
  EXPECT_DOUBLE_EQ(*Ppv(accused, truth), 0.75);
  EXPECT_EQ(CountCorrect(accused, truth), 3u);
  EXPECT_DOUBLE_EQ(Fpr(accused, truth, 14), 0.1);
  EXPECT_EQ(Fpr(accused, truth, 4), 0);
  EXPECT_FALSE(Ppv({}, truth).ok());
}

TEST(MetricsTest, HeadlineRatio) {
  // 10000 accusations of which 9913.4 are correct on average.
  EXPECT_NEAR(9913.4 / 10000, 0.99134, 1e-12);
  std::vector<Uid> accused;
  absl::flat_hash_set<Uid> truth;
  for (uint64_t i = 0; i < 10000; ++i) {
    accused.push_back(*Uid::Create(i));
    if (i < 9913) truth.insert(*Uid::Create(i));
  }
  EXPECT_DOUBLE_EQ(*Ppv(accused, truth), 0.9913);
  EXPECT_DOUBLE_EQ(Fpr(accused, truth, 1'000'000), 87.0 / (1'000'000 - 9913));
}

}  // namespace
}  // namespace prau::analytics
