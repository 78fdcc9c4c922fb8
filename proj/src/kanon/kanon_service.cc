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

#include "prau/kanon/kanon_service.h"

#include "absl/strings/str_cat.h"

namespace prau {

absl::Status KAnonConfig::Validate() const {
  if (k < 1) return absl::InvalidArgumentError("k must be at least 1");
  if (identifier_bits < 8 || identifier_bits > 16) {
    return absl::InvalidArgumentError(absl::StrCat(
        "identifier width ", identifier_bits, " outside [8, 16]"));
  }
  if (window <= 0) return absl::InvalidArgumentError("window must be positive");
  if (refresh <= 0) {
    return absl::InvalidArgumentError("refresh must be positive");
  }
  if (tokens_per_account < 0) {
    return absl::InvalidArgumentError("negative token allowance");
  }
  return absl::OkStatus();
}

absl::StatusOr<KAnonService> KAnonService::Create(KAnonConfig config) {
  if (absl::Status s = config.Validate(); !s.ok()) return s;
  return KAnonService(config);
}

absl::Status KAnonService::Join(AccountId account, uint32_t identifier,
                                KAnonObjectType type, const Digest128& digest,
                                SimSeconds now) {
  if (identifier >= (1u << config_.identifier_bits)) {
    return absl::InvalidArgumentError(
        absl::StrCat("browser identifier ", identifier, " exceeds ",
                     config_.identifier_bits, " bits"));
  }
  if (config_.tokens_per_account > 0) {
    TokenUse& use = tokens_[account];
    const int64_t period = now / config_.window;
    if (use.period != period) {
      use.period = period;
      use.used = 0;
    }
    if (use.used >= config_.tokens_per_account) {
      return absl::ResourceExhaustedError(
          absl::StrCat("account ", account, " has no join tokens left"));
    }
    ++use.used;
  }
  SimSeconds& last_seen = table_[ObjectKey{type, digest}][identifier];
  if (now > last_seen) last_seen = now;
  return absl::OkStatus();
}

int KAnonService::LiveCount(KAnonObjectType type, const Digest128& digest,
                            SimSeconds now) const {
  auto it = table_.find(ObjectKey{type, digest});
  if (it == table_.end()) return 0;
  const SimSeconds horizon = now - config_.window;
  int live = 0;
  for (const auto& [identifier, last_seen] : it->second) {
    if (last_seen >= horizon && last_seen <= now) ++live;
  }
  return live;
}

bool KAnonService::Query(KAnonObjectType type, const Digest128& digest,
                         SimSeconds now) const {
  return LiveCount(type, digest, now) >= config_.k;
}

absl::StatusOr<uint64_t> AccountsNeeded(uint64_t tracked_users,
                                        uint64_t tokens_per_account,
                                        uint64_t k) {
  if (tracked_users == 0 || tokens_per_account == 0 || k == 0) {
    return absl::InvalidArgumentError(
        "accounts_needed requires u, t, k >= 1");
  }
  const uint64_t groups =
      (tracked_users + tokens_per_account - 1) / tokens_per_account;
  return groups * k;
}

}  // namespace prau
