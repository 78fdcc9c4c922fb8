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

#ifndef PRAU_PROTOCOL_OBJECT_HASH_H_
#define PRAU_PROTOCOL_OBJECT_HASH_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "absl/numeric/int128.h"
#include "absl/status/statusor.h"
#include "prau/protocol/types.h"

namespace prau {

// The two object kinds the k-anonymity server tracks.
enum class KAnonObjectType : uint8_t {
  // (owner, bidding url, creative url, size): gates auction participation.
  kAuctionEligibility = 1,
  // The eligibility tuple plus the interest group name: gates name reporting.
  kReporting = 2,
};

struct Digest128 {
  absl::uint128 value = 0;

  friend bool operator==(const Digest128&, const Digest128&) = default;

  template <typename H>
  friend H AbslHashValue(H h, const Digest128& d) {
    return H::combine(std::move(h), absl::Uint128High64(d.value),
                      absl::Uint128Low64(d.value));
  }
};

// splitmix64 finalizer; also used to derive independent seeds.
uint64_t Mix64(uint64_t x);

// Keyed, deterministic 64-bit hash of an integer. Not cryptographic.
uint64_t KeyedHash64(uint64_t key, uint64_t value);

// Keyed 128-bit hash over length-prefixed string parts. The salt is fixed per
// simulation so that runs are reproducible.
class ObjectHasher {
 public:
  explicit ObjectHasher(uint64_t salt = 0) : salt_(salt) {}

  absl::StatusOr<Digest128> Hash(KAnonObjectType type,
                                 std::span<const std::string> parts) const;

  uint64_t salt() const { return salt_; }

 private:
  uint64_t salt_;
};

// Part lists for the two k-anonymity objects derived from one ad of a group.
std::vector<std::string> EligibilityParts(const InterestGroup& ig,
                                          const Ad& ad);
std::vector<std::string> ReportingParts(const InterestGroup& ig, const Ad& ad);

}  // namespace prau

#endif  // PRAU_PROTOCOL_OBJECT_HASH_H_
