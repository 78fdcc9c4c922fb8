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

#include "prau/protocol/types.h"

#include <charconv>
#include <cstdio>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace prau {

absl::StatusOr<Uid> Uid::Create(uint64_t value) {
  if (value >= kLimit) {
    return absl::InvalidArgumentError(
        absl::StrCat("uid ", value, " does not fit in 30 bits"));
  }
  return Uid(static_cast<uint32_t>(value));
}

absl::StatusOr<Uid> Uid::FromTag(std::string_view tag) {
  if (tag.size() != 8) {
    return absl::InvalidArgumentError(
        absl::StrCat("uid tag must be 8 hex digits, got '", AsAbsl(tag), "'"));
  }
  uint32_t value = 0;
  auto [ptr, ec] = std::from_chars(tag.data(), tag.data() + tag.size(), value,
                                   16);
  if (ec != std::errc() || ptr != tag.data() + tag.size()) {
    return absl::InvalidArgumentError(
        absl::StrCat("bad uid tag '", AsAbsl(tag), "'"));
  }
  return Create(value);
}

std::string Uid::Tag() const {
  char buf[9];
  std::snprintf(buf, sizeof(buf), "%08x", value_);
  return std::string(buf, 8);
}

absl::StatusOr<Origin> Origin::Create(std::string name) {
  if (name.empty()) return absl::InvalidArgumentError("empty origin");
  return Origin(std::move(name));
}

std::string AdSize::ToString() const {
  return absl::StrCat(width, "x", height);
}

std::vector<std::string> ValidateInterestGroup(const InterestGroup& ig) {
  std::vector<std::string> violations;
  if (ig.name.empty()) violations.push_back("interest group name is empty");
  if (ig.owner.empty()) violations.push_back("interest group owner is empty");
  if (ig.ads.empty()) violations.push_back("interest group has no ads");
  for (const Ad& ad : ig.ads) {
    if (ad.creative_url.empty()) {
      violations.push_back("ad with empty creative url");
      break;
    }
  }
  if (ig.lifetime < 0) violations.push_back("negative lifetime");
  if (ig.lifetime > kMaxInterestGroupLifetime) {
    violations.push_back(absl::StrCat("lifetime ", ig.lifetime,
                                      " exceeds maximum of ",
                                      kMaxInterestGroupLifetime, " seconds"));
  }
  return violations;
}

absl::StatusOr<Contribution> Contribution::Create(BucketKey bucket,
                                                  uint32_t value) {
  if (value > kContributionBudget) {
    return absl::InvalidArgumentError(absl::StrCat(
        "contribution value ", value, " exceeds ", kContributionBudget));
  }
  return Contribution(bucket, value);
}

absl::StatusOr<SealedReport> SealedReport::Create(
    uint64_t id, Origin destination, std::vector<Contribution> payload,
    SimSeconds created_at, SimSeconds deliver_at) {
  if (destination.empty()) {
    return absl::InvalidArgumentError("report without destination");
  }
  if (payload.size() > kMaxContributionsPerReport) {
    return absl::InvalidArgumentError(
        absl::StrCat("report holds ", payload.size(), " contributions, max ",
                     kMaxContributionsPerReport));
  }
  uint64_t total = 0;
  for (const Contribution& c : payload) total += c.value();
  if (total > kContributionBudget) {
    return absl::InvalidArgumentError(
        absl::StrCat("report total ", total, " exceeds ", kContributionBudget));
  }
  const SimSeconds delay = deliver_at - created_at;
  if (delay < 0 || delay > kMaxReportDelay) {
    return absl::InvalidArgumentError(
        absl::StrCat("report delay ", delay, " outside [0, ", kMaxReportDelay,
                     "]"));
  }
  SealedReport report;
  report.id_ = id;
  report.destination_ = std::move(destination);
  report.payload_ = std::move(payload);
  report.created_at_ = created_at;
  report.deliver_at_ = deliver_at;
  return report;
}

void SimClock::Step(SimSeconds dt) {
  if (dt > 0) now_ += dt;
}

void SimClock::AdvanceTo(SimSeconds t) {
  if (t > now_) now_ = t;
}

}  // namespace prau
