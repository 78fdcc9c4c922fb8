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
// The adversary's side of the linkage attack: a network of colluding buyer
// sites, one of which (the primary site) tags users, plus the secondary site
// that sells the ad slot where the linking auctions run.

#ifndef PRAU_ADVERSARY_COLLUDER_NETWORK_H_
#define PRAU_ADVERSARY_COLLUDER_NETWORK_H_

#include <cstdint>
#include <span>
#include <vector>

#include "absl/container/flat_hash_set.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "prau/protocol/types.h"

namespace prau::adversary {

inline constexpr int kMaxColluders = 300;

class ColluderNetwork {
 public:
  // n colluding buyers; colluders()[0] is the primary site.
  static absl::StatusOr<ColluderNetwork> Create(int n);

  const Origin& primary() const { return colluders_.front(); }
  const Origin& secondary() const { return secondary_; }
  std::span<const Origin> colluders() const { return colluders_; }
  int size() const { return static_cast<int>(colluders_.size()); }
  bool IsColluder(const Origin& origin) const {
    return members_.contains(origin);
  }

 private:
  ColluderNetwork() = default;

  std::vector<Origin> colluders_;
  absl::flat_hash_set<Origin> members_;
  Origin secondary_;
};

struct AttackConfig {
  double epsilon = 10.0;
  int colluders = 20;
  uint64_t pool_size = 100000;
  uint64_t accusations = 1000;
  // Bloom filter shape: `hashes` positions per UID out of `bloom_bits`.
  uint32_t hashes = 20;
  uint64_t bloom_bits = 201000;
  uint64_t bloom_salt = 0x5eed0b100f1e7ull;
  double l1 = kContributionBudget;

  absl::Status Validate() const;
};

}  // namespace prau::adversary

#endif  // PRAU_ADVERSARY_COLLUDER_NETWORK_H_
