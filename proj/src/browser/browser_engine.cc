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

#include "prau/browser/browser_engine.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "prau/browser/stochastic_round.h"

namespace prau {

absl::StatusOr<BrowserProfile> BrowserProfile::Create(
    uint64_t profile_id, uint32_t browser_identifier, int identifier_bits,
    AccountId account, uint64_t seed) {
  if (identifier_bits < 8 || identifier_bits > 16) {
    return absl::InvalidArgumentError(
        absl::StrCat("identifier width ", identifier_bits, " outside [8, 16]"));
  }
  if (browser_identifier >= (1u << identifier_bits)) {
    return absl::InvalidArgumentError(
        absl::StrCat("browser identifier ", browser_identifier,
                     " does not fit in ", identifier_bits, " bits"));
  }
  return BrowserProfile(profile_id, browser_identifier, account, seed);
}

const InterestGroup* BrowserProfile::FindGroup(const Origin& owner,
                                               std::string_view name,
                                               SimSeconds now) const {
  auto by_owner = groups_.find(owner.name());
  if (by_owner == groups_.end()) return nullptr;
  auto it = by_owner->second.find(name);
  if (it == by_owner->second.end() || now >= it->second.expires_at) {
    return nullptr;
  }
  return &it->second.ig;
}

std::optional<SimSeconds> BrowserProfile::ExpiresAt(
    const Origin& owner, std::string_view name) const {
  auto by_owner = groups_.find(owner.name());
  if (by_owner == groups_.end()) return std::nullopt;
  auto it = by_owner->second.find(name);
  if (it == by_owner->second.end()) return std::nullopt;
  return it->second.expires_at;
}

size_t BrowserProfile::LiveGroupCount(SimSeconds now) const {
  size_t live = 0;
  for (const auto& [owner, by_name] : groups_) {
    for (const auto& [name, stored] : by_name) {
      if (now < stored.expires_at) ++live;
    }
  }
  return live;
}

BrowserEngine::BrowserEngine(BrowserOptions options, KAnonService* kanon,
                             ObjectHasher hasher)
    : options_(options), kanon_(kanon), hasher_(hasher) {
  if (kanon_ == nullptr) options_.enforce_kanon = false;
}

absl::StatusOr<BrowserProfile> BrowserEngine::CreateProfile(
    uint64_t profile_id, uint32_t browser_identifier, AccountId account) const {
  const int bits =
      kanon_ != nullptr ? kanon_->config().identifier_bits : 16;
  return BrowserProfile::Create(profile_id, browser_identifier, bits, account,
                                Mix64(options_.seed ^ Mix64(profile_id)));
}

std::vector<BrowserProfile::AdDigests> BrowserEngine::DigestAds(
    const InterestGroup& ig) const {
  std::vector<BrowserProfile::AdDigests> out;
  if (kanon_ == nullptr) return out;
  out.reserve(ig.ads.size());
  for (const Ad& ad : ig.ads) {
    // Parts are never empty here, so hashing cannot fail.
    out.push_back(
        {*hasher_.Hash(KAnonObjectType::kAuctionEligibility,
                       EligibilityParts(ig, ad)),
         *hasher_.Hash(KAnonObjectType::kReporting, ReportingParts(ig, ad))});
  }
  return out;
}

absl::Status BrowserEngine::JoinAdInterestGroup(BrowserProfile& profile,
                                                InterestGroup ig,
                                                SimSeconds now) const {
  std::vector<std::string> violations = ValidateInterestGroup(ig);
  if (!violations.empty()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "rejected interest group: ", absl::StrJoin(violations, "; ")));
  }
  ig.joined_at = now;
  BrowserProfile::StoredGroup stored;
  stored.digests = DigestAds(ig);
  stored.expires_at = now + ig.lifetime;
  stored.last_updated = now;
  for (const auto& d : stored.digests) {
    profile.pending_joins_.push_back(
        {KAnonObjectType::kAuctionEligibility, d.eligibility});
    profile.pending_joins_.push_back(
        {KAnonObjectType::kReporting, d.reporting});
  }
  const std::string owner = ig.owner.name();
  const std::string name = ig.name;
  stored.ig = std::move(ig);
  profile.groups_[owner].insert_or_assign(name, std::move(stored));
  return absl::OkStatus();
}

int BrowserEngine::DailyUpdate(BrowserProfile& profile,
                               const UpdateSourceFn& source,
                               SimSeconds now) const {
  int updated = 0;
  for (auto& [owner, by_name] : profile.groups_) {
    for (auto& [name, stored] : by_name) {
      if (now >= stored.expires_at) continue;
      if (now - stored.last_updated < kDay) continue;
      stored.last_updated = now;
      std::optional<InterestGroup> fresh = source(stored.ig);
      if (!fresh.has_value()) continue;
      InterestGroup next = stored.ig;
      next.bidding_url = std::move(fresh->bidding_url);
      next.update_url = std::move(fresh->update_url);
      next.ads = std::move(fresh->ads);
      if (!ValidateInterestGroup(next).empty()) continue;
      stored.ig = std::move(next);
      stored.digests = DigestAds(stored.ig);
      for (const auto& d : stored.digests) {
        profile.pending_joins_.push_back(
            {KAnonObjectType::kAuctionEligibility, d.eligibility});
        profile.pending_joins_.push_back(
            {KAnonObjectType::kReporting, d.reporting});
      }
      ++updated;
    }
  }
  return updated;
}

int BrowserEngine::FlushKAnonJoins(BrowserProfile& profile,
                                   SimSeconds now) const {
  int limited = 0;
  if (kanon_ != nullptr) {
    for (const auto& join : profile.pending_joins_) {
      absl::Status s = kanon_->Join(profile.account_,
                                    profile.browser_identifier_, join.type,
                                    join.digest, now);
      if (!s.ok()) ++limited;
    }
  }
  profile.pending_joins_.clear();
  return limited;
}

bool BrowserEngine::PassesKAnon(BrowserProfile& profile, KAnonObjectType type,
                                const Digest128& digest, SimSeconds now) const {
  if (!options_.enforce_kanon) return true;
  const BrowserProfile::CacheKey key{type, digest};
  auto it = profile.kanon_cache_.find(key);
  if (it != profile.kanon_cache_.end() &&
      now - it->second.fetched_at < kanon_->config().refresh) {
    return it->second.k_anonymous;
  }
  const BrowserProfile::CachedAnswer answer{kanon_->Query(type, digest, now),
                                            now};
  profile.kanon_cache_.insert_or_assign(key, answer);
  return answer.k_anonymous;
}

AuctionOutcome BrowserEngine::RunAdAuction(BrowserProfile& profile,
                                           const AuctionConfig& config,
                                           const BuyerHooks& buyer_hooks,
                                           const ScoreAdFn& seller_hook,
                                           SimSeconds now) const {
  AuctionOutcome outcome;
  outcome.seller = config.seller;
  outcome.auction_signals = config.auction_signals;
  outcome.at = now;
  FlushKAnonJoins(profile, now);

  struct Candidate {
    const Origin* owner;
    const BrowserProfile::StoredGroup* group;
    size_t ad_index;
    double rounded_bid;
    double score;
  };
  std::optional<Candidate> best;

  std::vector<const Origin*> seen;
  for (const Origin& buyer : config.buyers) {
    bool duplicate = false;
    for (const Origin* s : seen) duplicate |= (*s == buyer);
    if (duplicate) continue;
    seen.push_back(&buyer);

    auto hook = buyer_hooks.find(buyer);
    if (hook == buyer_hooks.end()) continue;
    auto by_owner = profile.groups_.find(buyer.name());
    if (by_owner == profile.groups_.end()) continue;

    for (const auto& [name, stored] : by_owner->second) {
      if (now >= stored.expires_at) continue;
      std::vector<size_t> eligible;
      for (size_t i = 0; i < stored.ig.ads.size(); ++i) {
        if (!options_.enforce_kanon ||
            PassesKAnon(profile, KAnonObjectType::kAuctionEligibility,
                        stored.digests[i].eligibility, now)) {
          eligible.push_back(i);
        }
      }
      if (eligible.empty()) continue;

      std::optional<BidOutput> bid;
      if (eligible.size() == stored.ig.ads.size()) {
        bid = hook->second(BidderInputs{stored.ig, config.auction_signals},
                           profile.rng_);
      } else {
        InterestGroup visible = stored.ig;
        visible.ads.clear();
        for (size_t i : eligible) visible.ads.push_back(stored.ig.ads[i]);
        bid = hook->second(BidderInputs{visible, config.auction_signals},
                           profile.rng_);
      }
      if (!bid.has_value() || !(bid->bid > 0) || !std::isfinite(bid->bid)) {
        continue;
      }
      std::optional<size_t> ad_index;
      for (size_t i : eligible) {
        if (stored.ig.ads[i].creative_url == bid->chosen_ad.creative_url) {
          ad_index = i;
          break;
        }
      }
      if (!ad_index.has_value()) continue;

      const double rounded_bid = *StochasticRound(bid->bid, profile.rng_);
      const Ad& ad = stored.ig.ads[*ad_index];
      const ScoreOutput scored = seller_hook(
          ScoringInputs{rounded_bid, bid->ad_description, ad.creative_url,
                        buyer, config.auction_signals},
          profile.rng_);
      if (!(scored.score > 0) || !std::isfinite(scored.score)) continue;

      const bool better =
          !best.has_value() || scored.score > best->score ||
          (scored.score == best->score &&
           (buyer.name() < best->owner->name() ||
            (buyer.name() == best->owner->name() &&
             stored.ig.name < best->group->ig.name)));
      if (better) {
        best = Candidate{&buyer, &stored, *ad_index, rounded_bid,
                         scored.score};
      }
    }
  }

  if (!best.has_value()) return outcome;

  const Ad& ad = best->group->ig.ads[best->ad_index];
  outcome.winner = *best->owner;
  outcome.winning_ig_name = best->group->ig.name;
  outcome.winning_bidding_url = best->group->ig.bidding_url;
  outcome.winning_creative_url = ad.creative_url;
  outcome.winning_ad_size = ad.size;
  outcome.rounded_bid = best->rounded_bid;
  outcome.rounded_score = *StochasticRound(best->score, profile.rng_);
  outcome.winning_ig_name_visible =
      !options_.enforce_kanon ||
      PassesKAnon(profile, KAnonObjectType::kReporting,
                  best->group->digests[best->ad_index].reporting, now);
  return outcome;
}

std::optional<ScheduledReport> BrowserEngine::SealContributions(
    BrowserProfile& profile, const Origin& site,
    const std::vector<ContributionRequest>& requests, SimSeconds now) {
  std::vector<Contribution> accepted;
  for (size_t i = 0; i < requests.size(); ++i) {
    const ContributionRequest& r = requests[i];
    DropRecord drop{profile.profile_id_, site.name(), r.bucket, r.value, now,
                    DropReason::kOverBudget};
    if (i >= kMaxContributionsPerReport) {
      drop.reason = DropReason::kPerReportLimit;
      drop_log_.push_back(std::move(drop));
      continue;
    }
    absl::StatusOr<Contribution> c = Contribution::Create(r.bucket, r.value);
    if (!c.ok()) {
      drop.reason = DropReason::kInvalidValue;
      drop_log_.push_back(std::move(drop));
      continue;
    }
    if (!profile.budget_.TryContribute(site.name(), r.value, now)) {
      drop_log_.push_back(std::move(drop));
      continue;
    }
    accepted.push_back(*c);
  }
  if (accepted.empty()) return std::nullopt;

  std::uniform_int_distribution<SimSeconds> delay(0, kMaxReportDelay);
  const SimSeconds deliver_at = now + delay(profile.rng_);
  const uint64_t id = next_report_id_++;
  // Budget and per-report limits were enforced above, so sealing succeeds.
  SealedReport report =
      *SealedReport::Create(id, site, std::move(accepted), now, deliver_at);
  pending_.push_back(std::move(report));
  std::push_heap(pending_.begin(), pending_.end(), ReportOrder());
  return ScheduledReport{id, site, deliver_at};
}

std::vector<ScheduledReport> BrowserEngine::ReportWin(
    BrowserProfile& profile, const AuctionOutcome& outcome,
    const ReportWinFn& buyer_report_hook, const ReportWinFn& seller_report_hook,
    SimSeconds now) {
  std::vector<ScheduledReport> scheduled;
  if (!outcome.winner.has_value()) return scheduled;

  ReportingInputs inputs;
  inputs.interest_group_owner = *outcome.winner;
  inputs.creative_url = outcome.winning_creative_url;
  inputs.bid = outcome.rounded_bid;
  inputs.score = outcome.rounded_score;
  inputs.auction_signals = outcome.auction_signals;

  bool name_visible = !options_.enforce_kanon;
  if (options_.enforce_kanon) {
    InterestGroup probe;
    probe.name = outcome.winning_ig_name;
    probe.owner = *outcome.winner;
    probe.bidding_url = outcome.winning_bidding_url;
    Ad ad{outcome.winning_creative_url, "", outcome.winning_ad_size};
    absl::StatusOr<Digest128> digest =
        hasher_.Hash(KAnonObjectType::kReporting, ReportingParts(probe, ad));
    name_visible =
        digest.ok() &&
        PassesKAnon(profile, KAnonObjectType::kReporting, *digest, now);
  }
  if (name_visible) inputs.interest_group_name = outcome.winning_ig_name;

  if (buyer_report_hook) {
    std::vector<ContributionRequest> requests =
        buyer_report_hook(inputs, profile.rng_);
    if (auto r = SealContributions(profile, *outcome.winner, requests, now)) {
      scheduled.push_back(*r);
    }
  }
  if (seller_report_hook) {
    std::vector<ContributionRequest> requests =
        seller_report_hook(inputs, profile.rng_);
    if (auto r = SealContributions(profile, outcome.seller, requests, now)) {
      scheduled.push_back(*r);
    }
  }
  return scheduled;
}

std::vector<SealedReport> BrowserEngine::DeliverDueReports(SimSeconds now) {
  std::vector<SealedReport> due;
  while (!pending_.empty() && pending_.front().deliver_at() <= now) {
    std::pop_heap(pending_.begin(), pending_.end(), ReportOrder());
    due.push_back(std::move(pending_.back()));
    pending_.pop_back();
  }
  return due;
}

std::optional<SimSeconds> BrowserEngine::NextDeliveryTime() const {
  if (pending_.empty()) return std::nullopt;
  return pending_.front().deliver_at();
}

}  // namespace prau
