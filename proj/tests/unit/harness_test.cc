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
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "absl/container/flat_hash_set.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "prau/analytics/theorem_accuracy.h"
#include "prau/harness/csv.h"
#include "prau/harness/experiment_config.h"
#include "prau/harness/experiments.h"
#include "prau/harness/parallel.h"
#include "prau/harness/scenarios.h"

namespace prau::harness {
namespace {

using ::testing::ElementsAre;

// ---- Configuration ----------------------------------------------------------

TEST(ExperimentConfigTest, SettingsParseListsAndScalars) {
  ExperimentConfig c;
  ASSERT_TRUE(ApplySetting("experiment", "collusion-table", c).ok());
  ASSERT_TRUE(ApplySetting("epsilon", "1,10", c).ok());
  ASSERT_TRUE(ApplySetting("accusations", "1000,10000", c).ok());
  ASSERT_TRUE(ApplySetting("bloom-bits", "4000", c).ok());
  ASSERT_TRUE(ApplySetting("noiseless", "true", c).ok());
  EXPECT_EQ(c.kind, ExperimentKind::kCollusionTable);
  EXPECT_THAT(c.epsilons, ElementsAre(1, 10));
  EXPECT_THAT(c.accusations, ElementsAre(1000, 10000));
  EXPECT_EQ(c.bloom_bits, 4000);
  EXPECT_TRUE(c.noiseless);
  EXPECT_TRUE(c.Validate().ok());

  EXPECT_FALSE(ApplySetting("colour", "red", c).ok());
  EXPECT_FALSE(ApplySetting("epsilon", "ten", c).ok());
  EXPECT_FALSE(ApplySetting("replicas", "", c).ok());
  EXPECT_FALSE(ApplySetting("experiment", "scenario9", c).ok());
}

TEST(ExperimentConfigTest, ValidateRejectsOutOfRange) {
  ExperimentConfig c;
  c.epsilons = {0};
  EXPECT_FALSE(c.Validate().ok());
  c = {};
  c.hashes = 21;
  EXPECT_FALSE(c.Validate().ok());
  c = {};
  c.buyers = {301};
  EXPECT_FALSE(c.Validate().ok());
}

TEST(ExperimentConfigTest, ConfigFileSkipsCommentsAndReportsLines) {
  const std::string path = ::testing::TempDir() + "/prau_config.txt";
  {
    std::ofstream f(path);
    f << "# scenario sweep\n\nexperiment = scenario2\nepsilon=1\n"
         "buyers=5,8\n";
  }
  ExperimentConfig c;
  ASSERT_TRUE(ApplyConfigFile(path, c).ok());
  EXPECT_EQ(c.kind, ExperimentKind::kScenario2);
  EXPECT_THAT(c.buyers, ElementsAre(5, 8));
  {
    std::ofstream f(path);
    f << "epsilon=1\nnot a setting\n";
  }
  absl::Status s = ApplyConfigFile(path, c);
  EXPECT_FALSE(s.ok());
  EXPECT_THAT(std::string(s.message()), ::testing::HasSubstr(":2:"));
  EXPECT_FALSE(ApplyConfigFile(path + ".missing", c).ok());
  std::remove(path.c_str());
}

TEST(ExperimentConfigTest, KindNamesRoundTrip) {
  for (ExperimentKind k :
       {ExperimentKind::kTheorem, ExperimentKind::kAccuracyCurve,
        ExperimentKind::kCollusionTable, ExperimentKind::kFprCurve,
        ExperimentKind::kScenario1, ExperimentKind::kScenario2,
        ExperimentKind::kScenario3}) {
    EXPECT_EQ(*ParseExperimentKind(ExperimentKindName(k)), k);
  }
}

TEST(ExperimentConfigTest, ReplicaSeedsAreDistinctAndStable) {
  absl::flat_hash_set<uint64_t> seen;
  for (int64_t i = 0; i < 1000; ++i) seen.insert(ReplicaSeed(7, i));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_EQ(ReplicaSeed(7, 3), ReplicaSeed(7, 3));
  EXPECT_NE(ReplicaSeed(7, 3), ReplicaSeed(8, 3));
}

// ---- CSV --------------------------------------------------------------------

TEST(CsvTest, FormatsShortestRoundTrip) {
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  EXPECT_EQ(FormatDouble(2), "2");
  EXPECT_EQ(FormatDouble(-1.5e-300), "-1.5e-300");
  EXPECT_EQ(std::stod(FormatDouble(1.0 / 3)), 1.0 / 3);
  EXPECT_EQ(FormatDouble(std::nan("")), "nan");
  EXPECT_EQ(FormatInt(-42), "-42");
}

TEST(CsvTest, WriteParseRoundTrip) {
  CsvTable t{{"a", "b"}, {{"1", "x"}, {"2.5", ""}}};
  const std::string text = ToCsvString(t);
  EXPECT_EQ(text, "a,b\n1,x\n2.5,\n");
  CsvTable back = ParseCsv(text);
  EXPECT_EQ(back.header, t.header);
  EXPECT_EQ(back.rows, t.rows);
}

TEST(ParallelForTest, VisitsEveryIndexOnce) {
  for (int jobs : {1, 3}) {
    std::vector<int> hits(100, 0);
    ParallelFor(100, jobs, [&](size_t i) { ++hits[i]; });
    for (int h : hits) ASSERT_EQ(h, 1);
  }
}

// ---- Scenario 1 -------------------------------------------------------------

TEST(Scenario1Test, LinksOnlyWhenTheTargetVisits) {
  Scenario1Options options;
  options.world.seed = 3;
  absl::StatusOr<Scenario1Result> yes = RunScenario1(options);
  ASSERT_TRUE(yes.ok()) << yes.status();
  EXPECT_TRUE(yes->linked);
  ASSERT_TRUE(yes->detection_latency.has_value());
  EXPECT_GE(*yes->detection_latency, 0);
  EXPECT_LE(*yes->detection_latency, kMaxReportDelay);
  EXPECT_TRUE(yes->consistent_with_log);

  options.visit_secondary = false;
  absl::StatusOr<Scenario1Result> no = RunScenario1(options);
  ASSERT_TRUE(no.ok()) << no.status();
  EXPECT_FALSE(no->linked);
  EXPECT_FALSE(no->detection_latency.has_value());
  EXPECT_EQ(no->reports_received, 0u);
}

TEST(Scenario1Test, LatencyBoundHoldsAcrossSeedsAndKAnonymity) {
  for (bool enforce : {false, true}) {
    for (uint64_t seed = 1; seed <= 20; ++seed) {
      Scenario1Options options;
      options.world.seed = seed;
      options.world.enforce_kanon = enforce;
      options.colluders = 3;
      absl::StatusOr<Scenario1Result> r = RunScenario1(options);
      ASSERT_TRUE(r.ok()) << r.status();
      ASSERT_TRUE(r->linked) << seed << " " << enforce;
      ASSERT_LE(*r->detection_latency, kMaxReportDelay);
      ASSERT_TRUE(r->consistent_with_log);
    }
  }
}

// ---- Scenario 2 -------------------------------------------------------------

double Scenario2Rate(double epsilon, int colluders, int64_t candidates,
                     int replicas, bool enforce = false) {
  int correct = 0;
  for (int i = 0; i < replicas; ++i) {
    Scenario2Options options;
    options.world.seed = ReplicaSeed(11, i);
    options.world.enforce_kanon = enforce;
    options.epsilon = epsilon;
    options.colluders = colluders;
    options.candidates = candidates;
    absl::StatusOr<Scenario2Result> r = RunScenario2(options);
    EXPECT_TRUE(r.ok()) << r.status();
    if (!r.ok()) return 0;
    EXPECT_TRUE(r->complete);
    correct += r->correct;
  }
  return static_cast<double>(correct) / replicas;
}

TEST(Scenario2Test, HighPrivacyBudgetLinksReliably) {
  const double theory =
      *analytics::TheoremAccuracy({.epsilon = 10, .u = 10000, .n = 15});
  ASSERT_GE(theory, 0.99);
  EXPECT_GE(Scenario2Rate(10, 15, 10000, 100), 0.99);
}

TEST(Scenario2Test, EmpiricalRateMatchesTheorem) {
  const int replicas = 400;
  for (int n : {5, 8}) {
    const double theory =
        *analytics::TheoremAccuracy({.epsilon = 1, .u = 1000, .n = n});
    const double se = std::sqrt(theory * (1 - theory) / replicas);
    EXPECT_NEAR(Scenario2Rate(1, n, 1000, replicas), theory, 4 * se) << n;
  }
}

TEST(Scenario2Test, WorksUnderKAnonymityEnforcement) {
  EXPECT_GE(Scenario2Rate(10, 15, 1000, 10, /*enforce=*/true), 0.99);
}

// ---- Scenario 3 -------------------------------------------------------------

Scenario3Options SmallScenario3(uint64_t seed) {
  Scenario3Options options;
  options.world.seed = seed;
  options.attack.colluders = 20;
  options.attack.pool_size = 5000;
  options.attack.accusations = 50;
  options.visitors = 50;
  return options;
}

TEST(Scenario3Test, NoiselessAttackFindsEveryVisitor) {
  Scenario3Options options = SmallScenario3(4);
  options.world.noiseless = true;
  absl::StatusOr<LinkageResult> r = RunScenario3(options);
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_TRUE(r->complete);
  EXPECT_EQ(r->reports, 50u * 20u);
  EXPECT_EQ(r->truth.size(), 50u);
  EXPECT_EQ(r->correct, 50u);
  EXPECT_DOUBLE_EQ(r->ppv, 1);
  EXPECT_DOUBLE_EQ(r->fpr, 0);
}

TEST(Scenario3Test, NoisyAttackWithEnoughColludersIsAccurate) {
  absl::StatusOr<LinkageResult> r = RunScenario3(SmallScenario3(5));
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_EQ(r->accused.size(), 50u);
  EXPECT_GE(r->ppv, 0.9);
  EXPECT_EQ(r->scores.size(), r->candidates.size());
}

TEST(Scenario3Test, DeterministicPerSeed) {
  absl::StatusOr<LinkageResult> a = RunScenario3(SmallScenario3(6));
  absl::StatusOr<LinkageResult> b = RunScenario3(SmallScenario3(6));
  absl::StatusOr<LinkageResult> c = RunScenario3(SmallScenario3(7));
  ASSERT_TRUE(a.ok() && b.ok() && c.ok());
  EXPECT_EQ(a->scores, b->scores);
  EXPECT_EQ(a->accused, b->accused);
  EXPECT_NE(a->scores, c->scores);
}

TEST(DrawDistinctUidsTest, DistinctAndInRange) {
  Rng rng(1);
  std::vector<Uid> uids = DrawDistinctUids(20000, rng);
  absl::flat_hash_set<Uid> set(uids.begin(), uids.end());
  EXPECT_EQ(set.size(), 20000u);
}

// ---- Experiments ------------------------------------------------------------

TEST(ExperimentsTest, TheoremTableHasOneRowPerCell) {
  ExperimentConfig c;
  c.kind = ExperimentKind::kTheorem;
  c.epsilons = {1, 10};
  c.visitors = {1000};
  c.buyers = {2, 13};
  absl::StatusOr<ExperimentOutput> out = RunExperiment(c);
  ASSERT_TRUE(out.ok()) << out.status();
  EXPECT_EQ(out->table.rows.size(), 4u);
  EXPECT_EQ(out->table.header.front(), "epsilon");
}

TEST(ExperimentsTest, OutputIsIndependentOfJobCount) {
  ExperimentConfig c;
  c.kind = ExperimentKind::kCollusionTable;
  c.epsilons = {10};
  c.pools = {3000};
  c.accusations = {30};
  c.visitors = {30};
  c.replicas = 3;
  c.max_buyers = 64;
  c.raw = true;
  absl::StatusOr<ExperimentOutput> serial = RunExperiment(c);
  c.jobs = 3;
  absl::StatusOr<ExperimentOutput> parallel = RunExperiment(c);
  ASSERT_TRUE(serial.ok() && parallel.ok());
  EXPECT_EQ(ToCsvString(serial->table), ToCsvString(parallel->table));
  EXPECT_EQ(ToCsvString(serial->raw), ToCsvString(parallel->raw));
}

}  // namespace
}  // namespace prau::harness
