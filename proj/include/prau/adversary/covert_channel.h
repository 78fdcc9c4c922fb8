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

// Channels that carry a UID from the bidding worklet to reporting time even
// when the k-anonymity check hides the interest group name.
//
// Bid/score: the rounded number format has 2^15 positive values, so the high
// 15 bits of the UID ride in the bid and the low 15 bits in the score.
//
// Creative URL: every group carries the same inventory of A >= k ads for its
// UID segment, and the bidder picks the ad whose embedded id matches.

#ifndef PRAU_ADVERSARY_COVERT_CHANNEL_H_
#define PRAU_ADVERSARY_COVERT_CHANNEL_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "prau/protocol/types.h"

namespace prau::adversary {

struct CovertBid {
  double bid = 0;
  // Carries the full UID so the seller can produce the score half.
  std::string ad_description;
};

CovertBid CovertEncodeBid(Uid uid);
double CovertEncodeScore(Uid uid);

// Reassembles the UID from post-rounding bid and score. DataLoss if either
// value is not a valid codeword.
absl::StatusOr<Uid> CovertDecode(double bid, double score);

std::string AdDescriptionForUid(Uid uid);
absl::StatusOr<Uid> UidFromAdDescription(std::string_view description);

// Name of the UID-specific interest group; the UID is the trailing tag.
std::string InterestGroupNameForUid(Uid uid);
absl::StatusOr<Uid> UidFromInterestGroupName(std::string_view name);

std::string CreativeUrlForUid(const Origin& owner, Uid uid);
absl::StatusOr<Uid> UidFromCreativeUrl(std::string_view url);

// The shared ad inventory of uid's segment: ads for every UID in
// [floor(uid / segment_size) * segment_size, +segment_size).
std::vector<Ad> SegmentInventory(const Origin& owner, Uid uid,
                                 uint32_t segment_size);

// Picks the ad whose creative URL embeds `uid`. NotFound signals an inventory
// that does not cover the UID.
absl::StatusOr<Ad> CovertAdSelect(const InterestGroup& ig, Uid uid);

}  // namespace prau::adversary

#endif  // PRAU_ADVERSARY_COVERT_CHANNEL_H_
