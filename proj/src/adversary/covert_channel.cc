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
#include "prau/adversary/covert_channel.h"

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "prau/browser/stochastic_round.h"

namespace prau::adversary {
namespace {

constexpr int kHalfBits = 15;
constexpr uint32_t kHalfMask = (1u << kHalfBits) - 1;

constexpr absl::string_view kGroupPrefix = "uid-";
constexpr absl::string_view kDescriptionPrefix = "uid=";
constexpr absl::string_view kCreativeMarker = "/ad/";

double EncodeHalf(uint32_t h) {
  return ComposeCompactFloat(
      {.exponent = static_cast<int>(h >> kCompactFractionBits) +
                   kCompactExponentMin,
       .fraction = static_cast<int>(h & ((1u << kCompactFractionBits) - 1))});
}

absl::StatusOr<uint32_t> DecodeHalf(double value) {
  std::optional<CompactFloatParts> parts = DecomposeCompactFloat(value);
  if (!parts.has_value()) {
    return absl::DataLossError(
        absl::StrCat("not a covert codeword: ", value));
  }
  return (static_cast<uint32_t>(parts->exponent - kCompactExponentMin)
          << kCompactFractionBits) |
         static_cast<uint32_t>(parts->fraction);
}

absl::StatusOr<Uid> TagAfterPrefix(absl::string_view text,
                                   absl::string_view prefix) {
  if (!absl::StartsWith(text, prefix)) {
    return absl::InvalidArgumentError(
        absl::StrCat("missing '", prefix, "' in '", text, "'"));
  }
  text.remove_prefix(prefix.size());
  return Uid::FromTag(std::string_view(text.data(), text.size()));
}

}  // namespace

CovertBid CovertEncodeBid(Uid uid) {
  return {.bid = EncodeHalf(uid.value() >> kHalfBits),
          .ad_description = AdDescriptionForUid(uid)};
}

double CovertEncodeScore(Uid uid) {
  return EncodeHalf(uid.value() & kHalfMask);
}

absl::StatusOr<Uid> CovertDecode(double bid, double score) {
  absl::StatusOr<uint32_t> high = DecodeHalf(bid);
  if (!high.ok()) return high.status();
  absl::StatusOr<uint32_t> low = DecodeHalf(score);
  if (!low.ok()) return low.status();
  return Uid::Create((uint64_t{*high} << kHalfBits) | *low);
}

std::string AdDescriptionForUid(Uid uid) {
  return absl::StrCat(kDescriptionPrefix, uid.Tag());
}

absl::StatusOr<Uid> UidFromAdDescription(std::string_view description) {
  return TagAfterPrefix(AsAbsl(description), kDescriptionPrefix);
}

std::string InterestGroupNameForUid(Uid uid) {
  return absl::StrCat(kGroupPrefix, uid.Tag());
}

absl::StatusOr<Uid> UidFromInterestGroupName(std::string_view name) {
  return TagAfterPrefix(AsAbsl(name), kGroupPrefix);
}

std::string CreativeUrlForUid(const Origin& owner, Uid uid) {
  return absl::StrCat(owner.name(), kCreativeMarker, uid.Tag());
}

absl::StatusOr<Uid> UidFromCreativeUrl(std::string_view url) {
  const std::string_view marker(kCreativeMarker.data(), kCreativeMarker.size());
  size_t pos = url.rfind(marker);
  if (pos == std::string_view::npos) {
    return absl::InvalidArgumentError(
        absl::StrCat("creative url carries no id: ", AsAbsl(url)));
  }
  return Uid::FromTag(url.substr(pos + marker.size()));
}

std::vector<Ad> SegmentInventory(const Origin& owner, Uid uid,
                                 uint32_t segment_size) {
  std::vector<Ad> ads;
  if (segment_size == 0) return ads;
  uint64_t first = uint64_t{uid.value()} / segment_size * segment_size;
  uint64_t last = std::min<uint64_t>(first + segment_size, Uid::kLimit);
  ads.reserve(last - first);
  for (uint64_t v = first; v < last; ++v) {
    Uid member = *Uid::Create(v);
    ads.push_back({.creative_url = CreativeUrlForUid(owner, member),
                   .metadata = "",
                   .size = {.width = 300, .height = 250}});
  }
  return ads;
}

absl::StatusOr<Ad> CovertAdSelect(const InterestGroup& ig, Uid uid) {
  const std::string wanted = CreativeUrlForUid(ig.owner, uid);
  for (const Ad& ad : ig.ads) {
    if (ad.creative_url == wanted) return ad;
  }
  return absl::NotFoundError(
      absl::StrCat("no ad for uid ", uid.Tag(), " in group ", ig.name));
}

}  // namespace prau::adversary
