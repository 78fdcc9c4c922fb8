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
// Worklet code the colluders ship, and the two attack steps that drive it:
// tagging on the primary site and linking auctions on the secondary site.

#ifndef PRAU_ADVERSARY_ADVERSARY_H_
#define PRAU_ADVERSARY_ADVERSARY_H_

#include <cstdint>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "prau/adversary/collection.h"
#include "prau/adversary/colluder_network.h"
#include "prau/adversary/strategies.h"
#include "prau/browser/browser_engine.h"
#include "prau/protocol/types.h"

namespace prau::adversary {

// How the UID reaches reporting time.
enum class UidChannel {
  // Interest group name; only visible when the reporting tuple is
  // k-anonymous (or enforcement is off).
  kInterestGroupName,
  // Creative URL chosen from a shared per-segment ad inventory.
  kCreativeUrl,
  // High half in the bid, low half in the seller's score.
  kBidAndScore,
};

struct AttackPlan {
  AttackConfig config;
  ReportStrategy strategy = ReportStrategy::kBloom;
  UidChannel channel = UidChannel::kInterestGroupName;
  // Ads per inventory segment for kCreativeUrl; must reach k to survive the
  // eligibility check.
  uint32_t segment_size = 50;
  SimSeconds group_lifetime = kMaxInterestGroupLifetime;
};

class Adversary {
 public:
  static absl::StatusOr<Adversary> Create(ColluderNetwork network,
                                          AttackPlan plan);

  // A tagged visit to the primary site: every colluder adds one interest
  // group for `uid` to the profile. Rejects UIDs of 2^30 and above.
  absl::Status TagVisit(const BrowserEngine& engine, BrowserProfile& profile,
                        uint64_t uid, SimSeconds now) const;

  // A visit to the secondary site: n auctions, auction i open to colluder i
  // plus `other_bidders`, each followed by reporting if a colluder won.
  // Returns no outcomes while the tracker is suspended.
  std::vector<AuctionOutcome> RunLinkageAuctions(
      BrowserEngine& engine, BrowserProfile& profile, SimSeconds now,
      const BuyerHooks& other_bidders = {});

  // The interest group the primary site stores for `uid` under `owner`.
  InterestGroup GroupFor(const Origin& owner, Uid uid, SimSeconds now) const;

  // Worklet hooks, exposed for tests and custom drivers.
  const BuyerHooks& bidder_hooks() const { return bidder_hooks_; }
  ScoreAdFn SellerHookFor(const Origin& target) const;
  const ReportWinFn& report_hook() const { return report_hook_; }

  const ColluderNetwork& network() const { return network_; }
  const AttackPlan& plan() const { return plan_; }
  TrackerState& tracker() { return tracker_; }
  const TrackerState& tracker() const { return tracker_; }

 private:
  Adversary(ColluderNetwork network, AttackPlan plan);

  ColluderNetwork network_;
  AttackPlan plan_;
  BuyerHooks bidder_hooks_;
  ReportWinFn report_hook_;
  TrackerState tracker_;
};

// Recovers the UID the way the colluders' reporting code does. NotFound when
// the channel carries nothing usable.
absl::StatusOr<Uid> RecoverUid(const ReportingInputs& inputs,
                               UidChannel channel);

}  // namespace prau::adversary

#endif  // PRAU_ADVERSARY_ADVERSARY_H_
