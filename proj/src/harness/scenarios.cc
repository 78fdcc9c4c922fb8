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
#include "prau/harness/scenarios.h"

#include <algorithm>
#include <memory>
#include <optional>
#include <random>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "prau/adversary/adversary.h"
#include "prau/adversary/collection.h"
#include "prau/adversary/strategies.h"
#include "prau/aggregation/aggregation_service.h"
#include "prau/analytics/metrics.h"
#include "prau/browser/browser_engine.h"
#include "prau/kanon/kanon_service.h"
#include "prau/protocol/object_hash.h"

namespace prau::harness {
namespace {

using adversary::Adversary;
using adversary::AttackConfig;
using adversary::AttackPlan;
using adversary::ColluderNetwork;
using adversary::ReportBatch;
using adversary::ReportStrategy;
using adversary::UidChannel;

constexpr uint64_t kHasherSalt = 0x9a11e7b0a5e1ull;
constexpr AccountId kSybilAccountBase = AccountId{1} << 40;

// Stream tags so each concern draws from its own generator.
constexpr uint64_t kWorldStream = 1;
constexpr uint64_t kBrowserStream = 2;
constexpr uint64_t kNoiseStream = 3;

uint64_t StreamSeed(uint64_t seed, uint64_t stream) {
  return Mix64(seed ^ Mix64(stream));
}

class World {
 public:
  static absl::StatusOr<std::unique_ptr<World>> Create(
      const WorldOptions& options, const AttackConfig& attack,
      ReportStrategy strategy) {
    absl::StatusOr<ColluderNetwork> network =
        ColluderNetwork::Create(attack.colluders);
    if (!network.ok()) return network.status();
    AttackPlan plan{.config = attack,
                    .strategy = strategy,
                    .channel = options.enforce_kanon
                                   ? UidChannel::kBidAndScore
                                   : UidChannel::kInterestGroupName};
    absl::StatusOr<Adversary> adversary =
        Adversary::Create(*std::move(network), std::move(plan));
    if (!adversary.ok()) return adversary.status();

    std::optional<KAnonService> kanon;
    if (options.enforce_kanon) {
      absl::StatusOr<KAnonService> service = KAnonService::Create({});
      if (!service.ok()) return service.status();
      kanon.emplace(*std::move(service));
    }
    return std::unique_ptr<World>(
        new World(options, std::move(kanon), *std::move(adversary)));
  }

  BrowserEngine& engine() { return engine_; }
  Adversary& adversary() { return adversary_; }
  AggregationService& aggregation() { return aggregation_; }
  Rng& rng() { return rng_; }

  absl::StatusOr<BrowserProfile> NewProfile(uint64_t profile_id) {
    std::uniform_int_distribution<uint32_t> identifier(0, 0xffff);
    return engine_.CreateProfile(profile_id, identifier(rng_),
                                 static_cast<AccountId>(profile_id));
  }

  // Adversary-run browsers that push each colluder's shared ad over the
  // k threshold. Each joins a single colluder's group so its account stays
  // within the join-token limit.
  absl::Status RecruitSybils(SimSeconds now) {
    if (!kanon_.has_value()) return absl::OkStatus();
    const int k = kanon_->config().k;
    uint64_t next_id = 0;
    for (const Origin& colluder : adversary_.network().colluders()) {
      for (int j = 0; j < k; ++j, ++next_id) {
        absl::StatusOr<BrowserProfile> sybil = engine_.CreateProfile(
            kSybilAccountBase + next_id, static_cast<uint32_t>(j),
            kSybilAccountBase + next_id);
        if (!sybil.ok()) return sybil.status();
        absl::StatusOr<Uid> uid = Uid::Create(Uid::kLimit - 1 - next_id);
        if (!uid.ok()) return uid.status();
        absl::Status s = engine_.JoinAdInterestGroup(
            *sybil, adversary_.GroupFor(colluder, *uid, now), now);
        if (!s.ok()) return s;
        if (engine_.FlushKAnonJoins(*sybil, now) != 0) {
          return absl::ResourceExhaustedError("sybil join was rate-limited");
        }
      }
    }
    return absl::OkStatus();
  }

 private:
  World(const WorldOptions& options, std::optional<KAnonService> kanon,
        Adversary adversary)
      : kanon_(std::move(kanon)),
        engine_({.seed = StreamSeed(options.seed, kBrowserStream),
                 .enforce_kanon = options.enforce_kanon},
                kanon_.has_value() ? &*kanon_ : nullptr,
                ObjectHasher(kHasherSalt)),
        aggregation_({.seed = StreamSeed(options.seed, kNoiseStream),
                      .add_noise = !options.noiseless}),
        adversary_(std::move(adversary)),
        rng_(StreamSeed(options.seed, kWorldStream)) {}

  std::optional<KAnonService> kanon_;
  BrowserEngine engine_;
  AggregationService aggregation_;
  Adversary adversary_;
  Rng rng_;
};

AttackConfig SmallAttack(double epsilon, int colluders, uint64_t pool) {
  AttackConfig config;
  config.epsilon = epsilon;
  config.colluders = colluders;
  config.pool_size = std::max<uint64_t>(pool, 1);
  config.accusations = 0;
  return config;
}

}  // namespace

std::vector<Uid> DrawDistinctUids(size_t count, Rng& rng) {
  count = std::min<size_t>(count, Uid::kLimit);
  std::uniform_int_distribution<uint32_t> draw(0, Uid::kLimit - 1);
  absl::flat_hash_set<uint32_t> seen;
  seen.reserve(count);
  std::vector<Uid> uids;
  uids.reserve(count);
  while (uids.size() < count) {
    const uint32_t v = draw(rng);
    if (seen.insert(v).second) uids.push_back(*Uid::Create(v));
  }
  return uids;
}

absl::StatusOr<Scenario1Result> RunScenario1(const Scenario1Options& options) {
  if (options.background_profiles < 0) {
    return absl::InvalidArgumentError("background_profiles must be >= 0");
  }
  if (options.visit_at < options.tag_at) {
    return absl::InvalidArgumentError("visit must not precede tagging");
  }
  absl::StatusOr<std::unique_ptr<World>> world = World::Create(
      options.world, SmallAttack(kDefaultEpsilon, options.colluders, 1),
      ReportStrategy::kPresence);
  if (!world.ok()) return world.status();
  World& w = **world;
  if (absl::Status s = w.RecruitSybils(options.tag_at); !s.ok()) return s;

  const Uid target = DrawDistinctUids(1, w.rng()).front();
  absl::StatusOr<BrowserProfile> profile = w.NewProfile(0);
  if (!profile.ok()) return profile.status();
  if (absl::Status s = w.adversary().TagVisit(w.engine(), *profile,
                                              target.value(), options.tag_at);
      !s.ok()) {
    return s;
  }

  std::vector<SimSeconds> target_visits;
  if (options.visit_secondary) {
    w.adversary().RunLinkageAuctions(w.engine(), *profile, options.visit_at);
    target_visits.push_back(options.visit_at);
  }
  for (int i = 0; i < options.background_profiles; ++i) {
    absl::StatusOr<BrowserProfile> other = w.NewProfile(1 + i);
    if (!other.ok()) return other.status();
    w.adversary().RunLinkageAuctions(w.engine(), *other,
                                     options.visit_at + 1 + i);
  }

  SimClock clock(options.visit_at);
  ReportBatch batch = adversary::RunCollectionRound(
      w.engine(), w.adversary().network(), w.adversary().tracker(),
      static_cast<size_t>(options.colluders), clock);

  Scenario1Result result;
  const Origin& primary = w.adversary().network().primary();
  for (size_t i = 0; i < batch.reports.size(); ++i) {
    if (batch.reports[i].destination() != primary) continue;
    const SimSeconds at = batch.arrived_at[i];
    ++result.reports_received;
    if (!result.linked) {
      result.linked = true;
      result.detection_latency = at - options.visit_at;
    }
    const bool explained = std::any_of(
        target_visits.begin(), target_visits.end(), [at](SimSeconds v) {
          return v <= at && at - v <= kMaxReportDelay;
        });
    result.consistent_with_log &= explained;
  }
  return result;
}

absl::StatusOr<Scenario2Result> RunScenario2(const Scenario2Options& options) {
  if (options.candidates < 2) {
    return absl::InvalidArgumentError("need at least two candidates");
  }
  absl::StatusOr<std::unique_ptr<World>> world = World::Create(
      options.world,
      SmallAttack(options.epsilon, options.colluders,
                  static_cast<uint64_t>(options.candidates)),
      ReportStrategy::kUidBucket);
  if (!world.ok()) return world.status();
  World& w = **world;
  if (absl::Status s = w.RecruitSybils(0); !s.ok()) return s;

  const std::vector<Uid> candidates =
      DrawDistinctUids(static_cast<size_t>(options.candidates), w.rng());
  std::uniform_int_distribution<size_t> pick(0, candidates.size() - 1);
  Scenario2Result result;
  result.target = candidates[pick(w.rng())];

  absl::StatusOr<BrowserProfile> profile = w.NewProfile(0);
  if (!profile.ok()) return profile.status();
  if (absl::Status s = w.adversary().TagVisit(w.engine(), *profile,
                                              result.target.value(), 0);
      !s.ok()) {
    return s;
  }
  w.adversary().RunLinkageAuctions(w.engine(), *profile, kHour);

  SimClock clock(kHour);
  ReportBatch batch = adversary::RunCollectionRound(
      w.engine(), w.adversary().network(), w.adversary().tracker(),
      static_cast<size_t>(options.colluders), clock);
  result.reports = batch.reports.size();
  result.complete = batch.complete;

  const std::vector<BucketKey> buckets = adversary::UidBuckets(candidates);
  absl::StatusOr<Histogram> histogram = w.aggregation().Aggregate(
      {.reports = batch.reports, .buckets = buckets,
       .epsilon = options.epsilon});
  if (!histogram.ok()) return histogram.status();
  absl::StatusOr<Uid> predicted = adversary::Scenario2Predict(*histogram);
  if (!predicted.ok()) return predicted.status();
  result.predicted = *predicted;
  result.correct = result.predicted == result.target;
  return result;
}

absl::StatusOr<LinkageResult> RunScenario3(const Scenario3Options& options) {
  const AttackConfig& attack = options.attack;
  if (options.visitors < 1) {
    return absl::InvalidArgumentError("need at least one visitor");
  }
  absl::StatusOr<std::unique_ptr<World>> world =
      World::Create(options.world, attack, ReportStrategy::kBloom);
  if (!world.ok()) return world.status();
  World& w = **world;
  if (absl::Status s = w.RecruitSybils(0); !s.ok()) return s;

  LinkageResult result;
  result.candidates = DrawDistinctUids(attack.pool_size, w.rng());
  const size_t visitor_count = std::min<size_t>(
      static_cast<size_t>(options.visitors), result.candidates.size());

  // Partial Fisher-Yates over candidate indices picks the visitors.
  std::vector<size_t> order(result.candidates.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (size_t i = 0; i < visitor_count; ++i) {
    std::uniform_int_distribution<size_t> pick(i, order.size() - 1);
    std::swap(order[i], order[pick(w.rng())]);
  }

  // Every visitor is tagged on the primary site and later visits the
  // secondary site once. Visits land together, ahead of the first report,
  // so the collection-window suspension does not cut any of them off.
  result.truth.reserve(visitor_count);
  for (size_t i = 0; i < visitor_count; ++i) {
    const Uid uid = result.candidates[order[i]];
    result.truth.insert(uid);
    absl::StatusOr<BrowserProfile> profile = w.NewProfile(i);
    if (!profile.ok()) return profile.status();
    if (absl::Status s =
            w.adversary().TagVisit(w.engine(), *profile, uid.value(), 0);
        !s.ok()) {
      return s;
    }
    w.adversary().RunLinkageAuctions(w.engine(), *profile, kHour);
  }

  SimClock clock(kHour);
  ReportBatch batch = adversary::RunCollectionRound(
      w.engine(), w.adversary().network(), w.adversary().tracker(),
      static_cast<size_t>(attack.colluders) * visitor_count, clock);
  result.reports = batch.reports.size();
  result.complete = batch.complete;

  std::vector<double> dense;
  {
    const std::vector<BucketKey> buckets = adversary::BloomBuckets(attack);
    absl::StatusOr<Histogram> histogram = w.aggregation().Aggregate(
        {.reports = batch.reports, .buckets = buckets,
         .epsilon = attack.epsilon});
    if (!histogram.ok()) return histogram.status();
    batch.reports.clear();
    batch.reports.shrink_to_fit();
    absl::StatusOr<std::vector<double>> flat =
        adversary::DenseBloomHistogram(*histogram, attack);
    if (!flat.ok()) return flat.status();
    dense = *std::move(flat);
  }

  result.scores =
      adversary::Scenario3ScoreAll(dense, result.candidates, attack);
  const uint64_t depth = std::max(options.rank_depth, attack.accusations);
  result.ranking =
      adversary::RankCandidates(result.candidates, result.scores, depth);
  result.accused.assign(
      result.ranking.begin(),
      result.ranking.begin() +
          std::min<size_t>(attack.accusations, result.ranking.size()));
  result.correct = analytics::CountCorrect(result.accused, result.truth);
  if (!result.accused.empty()) {
    result.ppv = static_cast<double>(result.correct) /
                 static_cast<double>(result.accused.size());
  }
  result.fpr =
      analytics::Fpr(result.accused, result.truth, result.candidates.size());
  return result;
}

}  // namespace prau::harness
