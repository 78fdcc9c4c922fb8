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

// The trusted browser. It stores interest groups per profile, runs on-device
// auctions through injected buyer and seller hooks, applies both k-anonymity
// checks, and turns privateAggregation calls into sealed reports that are
// released after a random delay.
//
// Hooks stand in for worklet code. Each hook only sees the inputs the
// protocol grants it; nothing else about the profile leaks through.

#ifndef PRAU_BROWSER_BROWSER_ENGINE_H_
#define PRAU_BROWSER_BROWSER_ENGINE_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "prau/browser/budget_ledger.h"
#include "prau/kanon/kanon_service.h"
#include "prau/protocol/object_hash.h"
#include "prau/protocol/types.h"

namespace prau {

class BrowserEngine;

class BrowserProfile {
 public:
  static absl::StatusOr<BrowserProfile> Create(uint64_t profile_id,
                                               uint32_t browser_identifier,
                                               int identifier_bits,
                                               AccountId account,
                                               uint64_t seed);

  uint64_t profile_id() const { return profile_id_; }
  uint32_t browser_identifier() const { return browser_identifier_; }
  AccountId account() const { return account_; }

  // Live (unexpired) group lookup; nullptr when absent or expired.
  const InterestGroup* FindGroup(const Origin& owner, std::string_view name,
                                 SimSeconds now) const;
  std::optional<SimSeconds> ExpiresAt(const Origin& owner,
                                      std::string_view name) const;
  size_t LiveGroupCount(SimSeconds now) const;

  const BudgetLedger& budget() const { return budget_; }
  size_t pending_kanon_joins() const { return pending_joins_.size(); }

 private:
  friend class BrowserEngine;

  struct AdDigests {
    Digest128 eligibility;
    Digest128 reporting;
  };
  struct StoredGroup {
    InterestGroup ig;
    std::vector<AdDigests> digests;  // parallel to ig.ads
    SimSeconds expires_at = 0;
    SimSeconds last_updated = 0;
  };
  struct CachedAnswer {
    bool k_anonymous = false;
    SimSeconds fetched_at = 0;
  };
  struct CacheKey {
    KAnonObjectType type;
    Digest128 digest;
    friend bool operator==(const CacheKey&, const CacheKey&) = default;
    template <typename H>
    friend H AbslHashValue(H h, const CacheKey& k) {
      return H::combine(std::move(h), k.type, k.digest);
    }
  };
  struct PendingJoin {
    KAnonObjectType type;
    Digest128 digest;
  };

  BrowserProfile(uint64_t profile_id, uint32_t browser_identifier,
                 AccountId account, uint64_t seed)
      : profile_id_(profile_id),
        browser_identifier_(browser_identifier),
        account_(account),
        rng_(seed) {}

  uint64_t profile_id_;
  uint32_t browser_identifier_;
  AccountId account_;
  // owner -> name -> group. Ordered so auctions iterate deterministically.
  std::map<std::string, std::map<std::string, StoredGroup, std::less<>>,
           std::less<>>
      groups_;
  BudgetLedger budget_;
  absl::flat_hash_map<CacheKey, CachedAnswer> kanon_cache_;
  std::vector<PendingJoin> pending_joins_;
  Rng rng_;
};

// ---- Auction surface --------------------------------------------------------

struct AuctionConfig {
  Origin seller;
  // Buyers whose interest groups may bid.
  std::vector<Origin> buyers;
  std::string auction_signals;
};

// Everything a bidding hook is allowed to see: its own interest group (with
// only the ads that passed the eligibility check) and the auction signals.
struct BidderInputs {
  const InterestGroup& interest_group;
  std::string_view auction_signals;
};

struct BidOutput {
  double bid = 0;  // zero or negative means no bid
  Ad chosen_ad;
  std::string ad_description;
};

using GenerateBidFn =
    std::function<std::optional<BidOutput>(const BidderInputs&, Rng&)>;
using BuyerHooks = absl::flat_hash_map<Origin, GenerateBidFn>;

struct ScoringInputs {
  double bid = 0;  // already stochastically rounded
  std::string_view ad_description;
  std::string_view creative_url;
  const Origin& buyer;
  std::string_view auction_signals;
};

struct ScoreOutput {
  double score = 0;  // non-positive rejects the bid
};

using ScoreAdFn = std::function<ScoreOutput(const ScoringInputs&, Rng&)>;

struct AuctionOutcome {
  std::optional<Origin> winner;
  bool winning_ig_name_visible = false;
  std::string winning_creative_url;
  double rounded_bid = 0;
  double rounded_score = 0;

  // Browser-internal bookkeeping for reporting; never handed to hooks.
  Origin seller;
  std::string auction_signals;
  std::string winning_ig_name;
  std::string winning_bidding_url;
  AdSize winning_ad_size;
  SimSeconds at = 0;
};

// ---- Reporting surface ------------------------------------------------------

struct ReportingInputs {
  // Present only if the reporting tuple (which includes the name) is
  // k-anonymous.
  std::optional<std::string> interest_group_name;
  Origin interest_group_owner;
  std::string creative_url;
  double bid = 0;
  double score = 0;
  std::string auction_signals;
};

struct ContributionRequest {
  BucketKey bucket;
  uint32_t value = 0;
};

using ReportWinFn = std::function<std::vector<ContributionRequest>(
    const ReportingInputs&, Rng&)>;

struct ScheduledReport {
  uint64_t id = 0;
  Origin destination;
  SimSeconds deliver_at = 0;
};

enum class DropReason { kOverBudget, kPerReportLimit, kInvalidValue };

// Simulator-side record of a contribution the protocol dropped silently.
struct DropRecord {
  uint64_t profile_id = 0;
  std::string site;
  BucketKey bucket;
  uint32_t value = 0;
  SimSeconds at = 0;
  DropReason reason = DropReason::kOverBudget;
};

// Owner-supplied replacement served from an interest group's update URL.
// Name and owner in the returned record are ignored.
using UpdateSourceFn =
    std::function<std::optional<InterestGroup>(const InterestGroup&)>;

struct BrowserOptions {
  uint64_t seed = 0;
  bool enforce_kanon = true;
};

class BrowserEngine {
 public:
  // `kanon` may be null only when k-anonymity enforcement is disabled.
  BrowserEngine(BrowserOptions options, KAnonService* kanon,
                ObjectHasher hasher);

  absl::StatusOr<BrowserProfile> CreateProfile(uint64_t profile_id,
                                               uint32_t browser_identifier,
                                               AccountId account) const;

  // Stores (or replaces) the group and queues k-anonymity joins for both
  // object types of each ad.
  absl::Status JoinAdInterestGroup(BrowserProfile& profile, InterestGroup ig,
                                   SimSeconds now) const;

  // Refreshes groups whose last update is at least a day old. Returns the
  // number of groups whose fields were replaced.
  int DailyUpdate(BrowserProfile& profile, const UpdateSourceFn& source,
                  SimSeconds now) const;

  // Sends queued joins to the k-anonymity server. Returns how many were
  // rate-limited.
  int FlushKAnonJoins(BrowserProfile& profile, SimSeconds now) const;

  AuctionOutcome RunAdAuction(BrowserProfile& profile,
                              const AuctionConfig& config,
                              const BuyerHooks& buyer_hooks,
                              const ScoreAdFn& seller_hook,
                              SimSeconds now) const;

  // Runs the winner's and seller's reporting hooks and schedules one sealed
  // report per destination that received at least one accepted contribution.
  std::vector<ScheduledReport> ReportWin(BrowserProfile& profile,
                                         const AuctionOutcome& outcome,
                                         const ReportWinFn& buyer_report_hook,
                                         const ReportWinFn& seller_report_hook,
                                         SimSeconds now);

  // Removes and returns every report with deliver_at <= now, ordered by
  // (deliver_at, id).
  std::vector<SealedReport> DeliverDueReports(SimSeconds now);

  std::optional<SimSeconds> NextDeliveryTime() const;
  size_t pending_report_count() const { return pending_.size(); }
  const std::vector<DropRecord>& drop_log() const { return drop_log_; }

 private:
  struct ReportOrder {
    bool operator()(const SealedReport& a, const SealedReport& b) const {
      if (a.deliver_at() != b.deliver_at()) {
        return a.deliver_at() > b.deliver_at();
      }
      return a.id() > b.id();
    }
  };

  bool PassesKAnon(BrowserProfile& profile, KAnonObjectType type,
                   const Digest128& digest, SimSeconds now) const;
  std::vector<BrowserProfile::AdDigests> DigestAds(
      const InterestGroup& ig) const;
  std::optional<ScheduledReport> SealContributions(
      BrowserProfile& profile, const Origin& site,
      const std::vector<ContributionRequest>& requests, SimSeconds now);

  BrowserOptions options_;
  KAnonService* kanon_;
  ObjectHasher hasher_;
  uint64_t next_report_id_ = 1;
  std::vector<SealedReport> pending_;  // min-heap under ReportOrder
  std::vector<DropRecord> drop_log_;
};

}  // namespace prau

#endif  // PRAU_BROWSER_BROWSER_ENGINE_H_
