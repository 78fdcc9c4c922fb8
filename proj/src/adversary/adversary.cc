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
#include "prau/adversary/adversary.h"

#include <algorithm>
#include <optional>
#include <string>
#include <utility>

#include "absl/strings/str_cat.h"
#include "prau/adversary/covert_channel.h"

namespace prau::adversary {
namespace {

constexpr AdSize kSlotSize = {.width = 300, .height = 250};

std::string SharedCreativeUrl(const Origin& owner) {
  return absl::StrCat(owner.name(), "/ad/shared");
}

GenerateBidFn MakeBidder(UidChannel channel) {
  return [channel](const BidderInputs& in, Rng&) -> std::optional<BidOutput> {
    absl::StatusOr<Uid> uid = UidFromInterestGroupName(in.interest_group.name);
    if (!uid.ok() || in.interest_group.ads.empty()) return std::nullopt;
    BidOutput out;
    if (channel == UidChannel::kCreativeUrl) {
      absl::StatusOr<Ad> ad = CovertAdSelect(in.interest_group, *uid);
      if (!ad.ok()) return std::nullopt;
      out.chosen_ad = *std::move(ad);
    } else {
      out.chosen_ad = in.interest_group.ads.front();
    }
    if (channel == UidChannel::kBidAndScore) {
      CovertBid covert = CovertEncodeBid(*uid);
      out.bid = covert.bid;
      out.ad_description = std::move(covert.ad_description);
    } else {
      out.bid = 1.0;
      out.ad_description = AdDescriptionForUid(*uid);
    }
    return out;
  };
}

ReportWinFn MakeReporter(ReportStrategy strategy, UidChannel channel,
                         AttackConfig config) {
  return [=](const ReportingInputs& in,
             Rng&) -> std::vector<ContributionRequest> {
    absl::StatusOr<Uid> uid = RecoverUid(in, channel);
    if (!uid.ok()) return {};
    switch (strategy) {
      case ReportStrategy::kPresence:
        return {{.bucket = {uid->value()}, .value = 1}};
      case ReportStrategy::kUidBucket:
        return Scenario2ReportStrategy(*uid, config.l1);
      case ReportStrategy::kBloom:
        return Scenario3ReportStrategy(*uid, config);
    }
    return {};
  };
}

}  // namespace

absl::StatusOr<Uid> RecoverUid(const ReportingInputs& inputs,
                               UidChannel channel) {
  if (inputs.interest_group_name.has_value()) {
    absl::StatusOr<Uid> uid =
        UidFromInterestGroupName(*inputs.interest_group_name);
    if (uid.ok()) return uid;
  }
  switch (channel) {
    case UidChannel::kInterestGroupName:
      break;
    case UidChannel::kCreativeUrl:
      return UidFromCreativeUrl(inputs.creative_url);
    case UidChannel::kBidAndScore:
      return CovertDecode(inputs.bid, inputs.score);
  }
  return absl::NotFoundError("interest group name withheld");
}

absl::StatusOr<Adversary> Adversary::Create(ColluderNetwork network,
                                            AttackPlan plan) {
  if (absl::Status s = plan.config.Validate(); !s.ok()) return s;
  if (plan.config.colluders != network.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("plan expects ", plan.config.colluders,
                     " colluders, network has ", network.size()));
  }
  if (plan.channel == UidChannel::kCreativeUrl && plan.segment_size == 0) {
    return absl::InvalidArgumentError("segment_size must be positive");
  }
  if (plan.group_lifetime <= 0 ||
      plan.group_lifetime > kMaxInterestGroupLifetime) {
    return absl::InvalidArgumentError("group_lifetime out of range");
  }
  return Adversary(std::move(network), std::move(plan));
}

Adversary::Adversary(ColluderNetwork network, AttackPlan plan)
    : network_(std::move(network)), plan_(std::move(plan)) {
  GenerateBidFn bidder = MakeBidder(plan_.channel);
  for (const Origin& colluder : network_.colluders()) {
    bidder_hooks_.emplace(colluder, bidder);
  }
  report_hook_ = MakeReporter(plan_.strategy, plan_.channel, plan_.config);
}

InterestGroup Adversary::GroupFor(const Origin& owner, Uid uid,
                                  SimSeconds now) const {
  InterestGroup ig;
  ig.name = InterestGroupNameForUid(uid);
  ig.owner = owner;
  ig.bidding_url = absl::StrCat(owner.name(), "/bid.js");
  ig.update_url = absl::StrCat(owner.name(), "/update");
  switch (plan_.channel) {
    case UidChannel::kInterestGroupName:
      ig.ads.push_back({.creative_url = CreativeUrlForUid(owner, uid),
                        .metadata = "",
                        .size = kSlotSize});
      break;
    case UidChannel::kCreativeUrl:
      ig.ads = SegmentInventory(owner, uid, plan_.segment_size);
      break;
    case UidChannel::kBidAndScore:
      ig.ads.push_back({.creative_url = SharedCreativeUrl(owner),
                        .metadata = "",
                        .size = kSlotSize});
      break;
  }
  ig.joined_at = now;
  ig.lifetime = plan_.group_lifetime;
  return ig;
}

absl::Status Adversary::TagVisit(const BrowserEngine& engine,
                                 BrowserProfile& profile, uint64_t uid,
                                 SimSeconds now) const {
  absl::StatusOr<Uid> tag = Uid::Create(uid);
  if (!tag.ok()) return tag.status();
  for (const Origin& colluder : network_.colluders()) {
    absl::Status s =
        engine.JoinAdInterestGroup(profile, GroupFor(colluder, *tag, now), now);
    if (!s.ok()) return s;
  }
  return absl::OkStatus();
}

ScoreAdFn Adversary::SellerHookFor(const Origin& target) const {
  return [target, channel = plan_.channel](const ScoringInputs& in,
                                           Rng&) -> ScoreOutput {
    if (in.buyer != target) return {.score = -1};
    if (channel == UidChannel::kBidAndScore) {
      absl::StatusOr<Uid> uid = UidFromAdDescription(in.ad_description);
      if (!uid.ok()) return {.score = -1};
      return {.score = CovertEncodeScore(*uid)};
    }
    return {.score = 1};
  };
}

std::vector<AuctionOutcome> Adversary::RunLinkageAuctions(
    BrowserEngine& engine, BrowserProfile& profile, SimSeconds now,
    const BuyerHooks& other_bidders) {
  std::vector<AuctionOutcome> outcomes;
  if (tracker_.IsSuspended(now)) return outcomes;

  std::vector<Origin> others;
  BuyerHooks merged;
  if (!other_bidders.empty()) {
    merged = bidder_hooks_;
    for (const auto& [origin, hook] : other_bidders) {
      if (network_.IsColluder(origin)) continue;
      others.push_back(origin);
      merged.emplace(origin, hook);
    }
    std::sort(others.begin(), others.end());
  }
  const BuyerHooks& hooks = other_bidders.empty() ? bidder_hooks_ : merged;

  outcomes.reserve(network_.size());
  for (int i = 0; i < network_.size(); ++i) {
    const Origin& target = network_.colluders()[i];
    AuctionConfig config{.seller = network_.secondary(),
                         .buyers = {target},
                         .auction_signals = absl::StrCat("slot-", i)};
    config.buyers.insert(config.buyers.end(), others.begin(), others.end());
    AuctionOutcome outcome = engine.RunAdAuction(profile, config, hooks,
                                                 SellerHookFor(target), now);
    if (outcome.winner.has_value() && network_.IsColluder(*outcome.winner)) {
      engine.ReportWin(profile, outcome, report_hook_, nullptr, now);
    }
    outcomes.push_back(std::move(outcome));
  }
  return outcomes;
}

}  // namespace prau::adversary
