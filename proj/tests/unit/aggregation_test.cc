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
#include <algorithm>
#include <cmath>
#include <vector>

#include "gtest/gtest.h"
#include "prau/aggregation/aggregation_service.h"
#include "prau/aggregation/laplace_sampler.h"
#include "prau/protocol/types.h"

namespace prau {
namespace {

Origin Dest() { return *Origin::Create("https://dsp.example"); }

SealedReport Report(uint64_t id, std::vector<std::pair<uint64_t, uint32_t>>
                                     contributions) {
  std::vector<Contribution> payload;
  for (auto [bucket, value] : contributions) {
    payload.push_back(*Contribution::Create({bucket}, value));
  }
  return *SealedReport::Create(id, Dest(), std::move(payload), 0, 0);
}

AggregationService Noiseless() {
  return AggregationService({.seed = 1, .add_noise = false});
}

TEST(LaplaceSamplerTest, RejectsNonPositiveScale) {
  Rng rng(1);
  EXPECT_FALSE(SampleLaplace(0, rng).ok());
  EXPECT_FALSE(SampleLaplace(-1, rng).ok());
  EXPECT_TRUE(SampleLaplace(1, rng).ok());
}

TEST(LaplaceSamplerTest, UniformStaysInsideOpenInterval) {
  Rng rng(3);
  for (int i = 0; i < 100000; ++i) {
    const double u = UniformOpen01(rng);
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(LaplaceSamplerTest, MatchesDistributionQuantiles) {
  // Kolmogorov-Smirnov distance against the exact CDF.
  Rng rng(5);
  const double scale = 2.5;
  std::vector<double> xs(200000);
  for (double& x : xs) x = SampleLaplaceUnchecked(scale, rng);
  std::sort(xs.begin(), xs.end());
  double d = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    const double cdf = x < 0 ? 0.5 * std::exp(x / scale)
                             : 1 - 0.5 * std::exp(-x / scale);
    d = std::max(d, std::abs(cdf - static_cast<double>(i + 1) / xs.size()));
  }
  // 99.9% critical value is about 1.95 / sqrt(N).
  EXPECT_LT(d, 1.95 / std::sqrt(static_cast<double>(xs.size())));
}

TEST(AggregationServiceTest, SumsRequestedBucketsInQueryOrder) {
  AggregationService service = Noiseless();
  std::vector<SealedReport> reports = {Report(1, {{5, 10}, {6, 3}}),
                                       Report(2, {{5, 7}, {9, 100}})};
  std::vector<BucketKey> buckets = {{6}, {5}, {42}};
  absl::StatusOr<Histogram> h =
      service.Aggregate({.reports = reports, .buckets = buckets});
  ASSERT_TRUE(h.ok()) << h.status();
  ASSERT_EQ(h->size(), 3u);
  EXPECT_EQ((*h)[0].bucket, BucketKey{6});
  EXPECT_DOUBLE_EQ((*h)[0].value, 3);
  EXPECT_DOUBLE_EQ((*h)[1].value, 17);
  EXPECT_DOUBLE_EQ((*h)[2].value, 0);
}

TEST(AggregationServiceTest, RepeatedBucketInOneReportAddsUp) {
  AggregationService service = Noiseless();
  std::vector<SealedReport> reports = {Report(1, {{3, 5}, {3, 6}})};
  std::vector<BucketKey> buckets = {{3}};
  EXPECT_DOUBLE_EQ(
      (*service.Aggregate({.reports = reports, .buckets = buckets}))[0].value,
      11);
}

TEST(AggregationServiceTest, ReportsCanBeAggregatedOnlyOnce) {
  AggregationService service = Noiseless();
  std::vector<SealedReport> first = {Report(1, {{1, 1}})};
  std::vector<BucketKey> buckets = {{1}};
  ASSERT_TRUE(service.Aggregate({.reports = first, .buckets = buckets}).ok());
  EXPECT_TRUE(service.IsConsumed(1));

  std::vector<SealedReport> again = {Report(2, {{1, 1}}), Report(1, {{1, 1}})};
  absl::StatusOr<Histogram> h =
      service.Aggregate({.reports = again, .buckets = buckets});
  EXPECT_EQ(h.status().code(), absl::StatusCode::kFailedPrecondition);
  // The rejected batch consumed nothing.
  EXPECT_FALSE(service.IsConsumed(2));
  EXPECT_EQ(service.consumed_count(), 1u);
}

TEST(AggregationServiceTest, RejectsDuplicateIdInsideBatch) {
  AggregationService service = Noiseless();
  std::vector<SealedReport> reports = {Report(4, {{1, 1}}),
                                       Report(4, {{1, 1}})};
  std::vector<BucketKey> buckets = {{1}};
  EXPECT_FALSE(
      service.Aggregate({.reports = reports, .buckets = buckets}).ok());
  EXPECT_EQ(service.consumed_count(), 0u);
}

TEST(AggregationServiceTest, RejectsMalformedQueries) {
  AggregationService service = Noiseless();
  std::vector<SealedReport> reports = {Report(1, {{1, 1}})};
  std::vector<BucketKey> none;
  std::vector<BucketKey> dup = {{1}, {1}};
  std::vector<BucketKey> one = {{1}};
  EXPECT_FALSE(service.Aggregate({.reports = reports, .buckets = none}).ok());
  EXPECT_FALSE(service.Aggregate({.reports = reports, .buckets = dup}).ok());
  EXPECT_FALSE(service
                   .Aggregate({.reports = reports, .buckets = one,
                               .epsilon = 0})
                   .ok());
  EXPECT_FALSE(service
                   .Aggregate({.reports = reports, .buckets = one,
                               .epsilon = kMaxEpsilon + 1})
                   .ok());
  EXPECT_EQ(service.consumed_count(), 0u);
}

TEST(AggregationServiceTest, EmptyBatchReleasesPureNoise) {
  AggregationService service({.seed = 9});
  std::vector<BucketKey> buckets(1000);
  for (size_t i = 0; i < buckets.size(); ++i) buckets[i] = {i};
  absl::StatusOr<Histogram> h =
      service.Aggregate({.reports = {}, .buckets = buckets, .epsilon = 10});
  ASSERT_TRUE(h.ok());
  double abs_sum = 0;
  for (const HistogramEntry& e : *h) abs_sum += std::abs(e.value);
  // E|Laplace(b)| = b = 65536 / 10.
  EXPECT_NEAR(abs_sum / 1000, 6553.6, 6553.6 * 0.1);
}

TEST(AggregationServiceTest, NoiseDependsOnlyOnSeedAndBucketCount) {
  std::vector<BucketKey> buckets = {{1}, {2}, {3}};
  std::vector<SealedReport> a = {Report(1, {{1, 100}})};
  AggregationService s1({.seed = 77});
  AggregationService s2({.seed = 77});
  Histogram h1 = *s1.Aggregate({.reports = a, .buckets = buckets});
  Histogram h2 = *s2.Aggregate({.reports = {}, .buckets = buckets});
  EXPECT_DOUBLE_EQ(h1[0].value - h2[0].value, 100);
  EXPECT_DOUBLE_EQ(h1[1].value, h2[1].value);
  EXPECT_DOUBLE_EQ(h1[2].value, h2[2].value);
}

TEST(AggregationServiceTest, NoiseScaleFollowsEpsilon) {
  std::vector<BucketKey> buckets(20000);
  for (size_t i = 0; i < buckets.size(); ++i) buckets[i] = {i};
  for (double epsilon : {1.0, 10.0}) {
    AggregationService service({.seed = 3});
    Histogram h = *service.Aggregate(
        {.reports = {}, .buckets = buckets, .epsilon = epsilon});
    double sq = 0;
    for (const HistogramEntry& e : h) sq += e.value * e.value;
    const double scale = 65536 / epsilon;
    EXPECT_NEAR(sq / h.size(), 2 * scale * scale, 0.1 * 2 * scale * scale);
  }
}

}  // namespace
}  // namespace prau
