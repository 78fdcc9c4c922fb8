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

// Domain values shared by every party of the simulated auction protocol.

#ifndef PRAU_PROTOCOL_TYPES_H_
#define PRAU_PROTOCOL_TYPES_H_

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "absl/numeric/int128.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace prau {

// Bridges std::string_view into absl string APIs, whose string_view is a
// distinct type in some Abseil builds.
inline absl::string_view AsAbsl(std::string_view s) {
  return absl::string_view(s.data(), s.size());
}

// Simulation time in whole seconds.
using SimSeconds = int64_t;

// All randomness in the simulator flows through explicitly passed engines.
using Rng = std::mt19937_64;

inline constexpr SimSeconds kMinute = 60;
inline constexpr SimSeconds kHour = 3600;
inline constexpr SimSeconds kDay = 86400;

inline constexpr SimSeconds kMaxInterestGroupLifetime = 30 * kDay;
inline constexpr SimSeconds kBudgetWindow = 10 * kMinute;
inline constexpr SimSeconds kMaxReportDelay = kHour;
inline constexpr uint32_t kContributionBudget = 1u << 16;
inline constexpr uint32_t kDailyContributionBudget = 1u << 20;
inline constexpr size_t kMaxContributionsPerReport = 20;

// 30-bit user identifier an adversary embeds in names, URLs and bucket keys.
class Uid {
 public:
  static constexpr int kBits = 30;
  static constexpr uint32_t kLimit = 1u << kBits;

  static absl::StatusOr<Uid> Create(uint64_t value);
  // Parses the fixed-width tag produced by Tag().
  static absl::StatusOr<Uid> FromTag(std::string_view tag);

  constexpr Uid() = default;

  uint32_t value() const { return value_; }
  // Eight lowercase hex digits, e.g. "0000002a".
  std::string Tag() const;

  friend bool operator==(Uid, Uid) = default;
  friend auto operator<=>(Uid, Uid) = default;

  template <typename H>
  friend H AbslHashValue(H h, Uid uid) {
    return H::combine(std::move(h), uid.value_);
  }

 private:
  explicit constexpr Uid(uint32_t value) : value_(value) {}
  uint32_t value_ = 0;
};

// A buyer or seller site.
class Origin {
 public:
  static absl::StatusOr<Origin> Create(std::string name);

  Origin() = default;

  const std::string& name() const { return name_; }
  bool empty() const { return name_.empty(); }

  friend bool operator==(const Origin&, const Origin&) = default;
  friend auto operator<=>(const Origin&, const Origin&) = default;

  template <typename H>
  friend H AbslHashValue(H h, const Origin& origin) {
    return H::combine(std::move(h), origin.name_);
  }

 private:
  explicit Origin(std::string name) : name_(std::move(name)) {}
  std::string name_;
};

struct AdSize {
  int width = 0;
  int height = 0;

  std::string ToString() const;
  friend bool operator==(const AdSize&, const AdSize&) = default;
};

struct Ad {
  std::string creative_url;
  std::string metadata;
  AdSize size;

  friend bool operator==(const Ad&, const Ad&) = default;
};

struct InterestGroup {
  std::string name;
  Origin owner;
  std::string bidding_url;
  std::string update_url;
  std::vector<Ad> ads;
  SimSeconds joined_at = 0;
  SimSeconds lifetime = 0;

  friend bool operator==(const InterestGroup&, const InterestGroup&) = default;
};

// Returns human-readable violations; an empty list means the group is valid.
std::vector<std::string> ValidateInterestGroup(const InterestGroup& ig);

// 128-bit histogram index of an aggregatable contribution.
struct BucketKey {
  absl::uint128 value = 0;

  friend bool operator==(const BucketKey&, const BucketKey&) = default;
  friend bool operator<(const BucketKey& a, const BucketKey& b) {
    return a.value < b.value;
  }

  template <typename H>
  friend H AbslHashValue(H h, const BucketKey& key) {
    return H::combine(std::move(h), absl::Uint128High64(key.value),
                      absl::Uint128Low64(key.value));
  }
};

class Contribution {
 public:
  // Rejects values above the per-report budget.
  static absl::StatusOr<Contribution> Create(BucketKey bucket, uint32_t value);

  Contribution() = default;

  BucketKey bucket() const { return bucket_; }
  uint32_t value() const { return value_; }

  friend bool operator==(const Contribution&, const Contribution&) = default;

 private:
  Contribution(BucketKey bucket, uint32_t value)
      : bucket_(bucket), value_(value) {}

  BucketKey bucket_;
  uint32_t value_ = 0;
};

class UnsealKey;

// An event-level report whose payload only the aggregation service (holder of
// an UnsealKey) can read. Everyone else sees the envelope.
class SealedReport {
 public:
  static absl::StatusOr<SealedReport> Create(uint64_t id, Origin destination,
                                             std::vector<Contribution> payload,
                                             SimSeconds created_at,
                                             SimSeconds deliver_at);

  uint64_t id() const { return id_; }
  const Origin& destination() const { return destination_; }
  SimSeconds deliver_at() const { return deliver_at_; }

 private:
  friend class UnsealKey;

  SealedReport() = default;

  uint64_t id_ = 0;
  Origin destination_;
  std::vector<Contribution> payload_;
  SimSeconds created_at_ = 0;
  SimSeconds deliver_at_ = 0;
};

// Capability for reading sealed payloads. Only the aggregation service and the
// simulator-side inspector may mint one.
class UnsealKey {
 public:
  std::span<const Contribution> Open(const SealedReport& report) const {
    return report.payload_;
  }
  SimSeconds CreatedAt(const SealedReport& report) const {
    return report.created_at_;
  }

 private:
  friend class AggregationService;
  friend class SimulatorInspector;
  UnsealKey() = default;
};

// Simulator-side view used by tests and experiment drivers to observe what the
// protocol hides from its participants.
class SimulatorInspector {
 public:
  static std::span<const Contribution> Payload(const SealedReport& report) {
    return UnsealKey().Open(report);
  }
  static SimSeconds CreatedAt(const SealedReport& report) {
    return UnsealKey().CreatedAt(report);
  }
};

class SimClock {
 public:
  explicit SimClock(SimSeconds start = 0) : now_(start) {}

  SimSeconds now() const { return now_; }
  void Step(SimSeconds dt);
  // No-op when `t` is in the past.
  void AdvanceTo(SimSeconds t);

 private:
  SimSeconds now_;
};

}  // namespace prau

#endif  // PRAU_PROTOCOL_TYPES_H_
