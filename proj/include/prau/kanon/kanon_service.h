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

// In-process model of the k-anonymity server: Join records a browser
// identifier against a hashed object, Query answers whether at least k
// distinct identifiers were seen within the sliding window.

#ifndef PRAU_KANON_KANON_SERVICE_H_
#define PRAU_KANON_KANON_SERVICE_H_

#include <cstdint>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "prau/protocol/object_hash.h"
#include "prau/protocol/types.h"

namespace prau {

struct KAnonConfig {
  int k = 50;
  SimSeconds window = 30 * kDay;
  // How long a browser may reuse a cached Query answer.
  SimSeconds refresh = kHour;
  // Browser identifier width in bits.
  int identifier_bits = 16;
  // One-use join tokens issued to each account per window. Zero disables
  // rate limiting.
  int tokens_per_account = 10;

  absl::Status Validate() const;
};

using AccountId = uint64_t;

class KAnonService {
 public:
  static absl::StatusOr<KAnonService> Create(KAnonConfig config);

  // Records `identifier` under (type, digest). Returns ResourceExhausted when
  // the account has spent its tokens for the current window.
  absl::Status Join(AccountId account, uint32_t identifier,
                    KAnonObjectType type, const Digest128& digest,
                    SimSeconds now);

  // True iff at least k distinct identifiers have last_seen >= now - window.
  // Unknown objects are simply not k-anonymous.
  bool Query(KAnonObjectType type, const Digest128& digest,
             SimSeconds now) const;

  // Number of live identifiers; exposed for diagnostics and tests.
  int LiveCount(KAnonObjectType type, const Digest128& digest,
                SimSeconds now) const;

  const KAnonConfig& config() const { return config_; }

 private:
  struct ObjectKey {
    KAnonObjectType type;
    Digest128 digest;

    friend bool operator==(const ObjectKey&, const ObjectKey&) = default;
    template <typename H>
    friend H AbslHashValue(H h, const ObjectKey& k) {
      return H::combine(std::move(h), k.type, k.digest);
    }
  };
  struct TokenUse {
    int64_t period = -1;
    int used = 0;
  };

  explicit KAnonService(KAnonConfig config) : config_(config) {}

  KAnonConfig config_;
  absl::flat_hash_map<ObjectKey, absl::flat_hash_map<uint32_t, SimSeconds>>
      table_;
  absl::flat_hash_map<AccountId, TokenUse> tokens_;
};

// Accounts an adversary must control to push u tracked users through the
// k-anonymity threshold when each account holds t join tokens:
// ceil(u / t) * k.
absl::StatusOr<uint64_t> AccountsNeeded(uint64_t tracked_users,
                                        uint64_t tokens_per_account,
                                        uint64_t k);

}  // namespace prau

#endif  // PRAU_KANON_KANON_SERVICE_H_
