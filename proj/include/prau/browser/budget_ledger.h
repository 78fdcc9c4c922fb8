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

#ifndef PRAU_BROWSER_BUDGET_LEDGER_H_
#define PRAU_BROWSER_BUDGET_LEDGER_H_

#include <cstdint>
#include <deque>
#include <string>

#include "absl/container/flat_hash_map.h"
#include "prau/protocol/types.h"

namespace prau {

// Per-site contribution accounting: at most 2^16 in any 10-minute window and
// 2^20 in any 24-hour window. Both windows roll; calls for one site must come
// with non-decreasing timestamps.
class BudgetLedger {
 public:
  struct Limits {
    SimSeconds window = kBudgetWindow;
    uint64_t window_cap = kContributionBudget;
    SimSeconds day = kDay;
    uint64_t day_cap = kDailyContributionBudget;
  };

  BudgetLedger() = default;
  explicit BudgetLedger(Limits limits) : limits_(limits) {}

  // Accepts and records the contribution if both caps still hold.
  bool TryContribute(const std::string& site, uint32_t value, SimSeconds now);

  // Accepted value for `site` in (now - window, now].
  uint64_t WindowTotal(const std::string& site, SimSeconds now) const;
  uint64_t DayTotal(const std::string& site, SimSeconds now) const;

  const Limits& limits() const { return limits_; }

 private:
  struct Event {
    SimSeconds at;
    uint32_t value;
  };
  struct SiteLog {
    std::deque<Event> events;  // last 24 hours only
  };

  static uint64_t SumSince(const SiteLog& log, SimSeconds horizon,
                           SimSeconds now);

  Limits limits_;
  absl::flat_hash_map<std::string, SiteLog> sites_;
};

}  // namespace prau

#endif  // PRAU_BROWSER_BUDGET_LEDGER_H_
