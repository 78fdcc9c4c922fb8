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

#include "prau/protocol/object_hash.h"

#include "absl/status/status.h"

namespace prau {
namespace {

constexpr uint64_t kLaneSeedA = 0x9e3779b97f4a7c15ULL;
constexpr uint64_t kLaneSeedB = 0xc2b2ae3d27d4eb4fULL;
constexpr uint64_t kPrimeA = 0x100000001b3ULL;
constexpr uint64_t kPrimeB = 0xff51afd7ed558ccdULL;

// Two independent FNV-style lanes, each finished with a full-avalanche mix.
struct Lanes {
  uint64_t a;
  uint64_t b;

  void Absorb(uint8_t byte) {
    a = (a ^ byte) * kPrimeA;
    b = (b ^ byte) * kPrimeB;
    b ^= b >> 29;
  }
  void AbsorbWord(uint64_t word) {
    for (int i = 0; i < 8; ++i) Absorb(static_cast<uint8_t>(word >> (8 * i)));
  }
};

}  // namespace

uint64_t Mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

uint64_t KeyedHash64(uint64_t key, uint64_t value) {
  return Mix64(Mix64(key) ^ (value * kPrimeB + kLaneSeedB));
}

absl::StatusOr<Digest128> ObjectHasher::Hash(
    KAnonObjectType type, std::span<const std::string> parts) const {
  if (parts.empty()) {
    return absl::InvalidArgumentError("hash_object needs at least one part");
  }
  Lanes lanes{Mix64(salt_ ^ kLaneSeedA), Mix64(salt_ ^ kLaneSeedB)};
  lanes.Absorb(static_cast<uint8_t>(type));
  lanes.AbsorbWord(parts.size());
  for (const std::string& part : parts) {
    lanes.AbsorbWord(part.size());
    for (char c : part) lanes.Absorb(static_cast<uint8_t>(c));
  }
  const uint64_t hi = Mix64(lanes.a ^ Mix64(lanes.b));
  const uint64_t lo = Mix64(lanes.b + hi);
  return Digest128{absl::MakeUint128(hi, lo)};
}

std::vector<std::string> EligibilityParts(const InterestGroup& ig,
                                          const Ad& ad) {
  return {ig.owner.name(), ig.bidding_url, ad.creative_url,
          ad.size.ToString()};
}

std::vector<std::string> ReportingParts(const InterestGroup& ig,
                                        const Ad& ad) {
  return {ig.owner.name(), ig.bidding_url, ad.creative_url, ad.size.ToString(),
          ig.name};
}

}  // namespace prau
