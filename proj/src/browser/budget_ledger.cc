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

#include "prau/browser/budget_ledger.h"

namespace prau {

uint64_t BudgetLedger::SumSince(const SiteLog& log, SimSeconds horizon,
                                SimSeconds now) {
  uint64_t total = 0;
  for (auto it = log.events.rbegin(); it != log.events.rend(); ++it) {
    if (it->at <= horizon) break;
    if (it->at <= now) total += it->value;
  }
  return total;
}

uint64_t BudgetLedger::WindowTotal(const std::string& site,
                                   SimSeconds now) const {
  auto it = sites_.find(site);
  if (it == sites_.end()) return 0;
  return SumSince(it->second, now - limits_.window, now);
}

uint64_t BudgetLedger::DayTotal(const std::string& site, SimSeconds now) const {
  auto it = sites_.find(site);
  if (it == sites_.end()) return 0;
  return SumSince(it->second, now - limits_.day, now);
}

bool BudgetLedger::TryContribute(const std::string& site, uint32_t value,
                                 SimSeconds now) {
  SiteLog& log = sites_[site];
  while (!log.events.empty() && log.events.front().at <= now - limits_.day) {
    log.events.pop_front();
  }
  if (SumSince(log, now - limits_.window, now) + value > limits_.window_cap) {
    return false;
  }
  if (SumSince(log, now - limits_.day, now) + value > limits_.day_cap) {
    return false;
  }
  log.events.push_back({now, value});
  return true;
}

}  // namespace prau
