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
#include <random>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "prau/browser/budget_ledger.h"

namespace prau {
namespace {

TEST(BudgetLedgerTest, WindowCapIsInclusive) {
  BudgetLedger ledger;
  EXPECT_TRUE(ledger.TryContribute("a", 65536, 0));
  EXPECT_FALSE(ledger.TryContribute("a", 1, 0));
  EXPECT_TRUE(ledger.TryContribute("b", 65536, 0));
  EXPECT_EQ(ledger.WindowTotal("a", 0), 65536u);
}

TEST(BudgetLedgerTest, WindowRolls) {
  BudgetLedger ledger;
  ASSERT_TRUE(ledger.TryContribute("a", 65536, 100));
  EXPECT_FALSE(ledger.TryContribute("a", 1, 100 + kBudgetWindow - 1));
  EXPECT_TRUE(ledger.TryContribute("a", 65536, 100 + kBudgetWindow));
}

TEST(BudgetLedgerTest, DailyCapApplies) {
  BudgetLedger ledger;
  SimSeconds t = 0;
  for (int i = 0; i < 16; ++i, t += kBudgetWindow) {
    ASSERT_TRUE(ledger.TryContribute("a", 65536, t)) << i;
  }
  EXPECT_EQ(ledger.DayTotal("a", t), uint64_t{1} << 20);
  EXPECT_FALSE(ledger.TryContribute("a", 1, t));
  EXPECT_TRUE(ledger.TryContribute("a", 65536, kDay));
}

TEST(BudgetLedgerTest, RejectedContributionLeavesNoTrace) {
  BudgetLedger ledger;
  ASSERT_TRUE(ledger.TryContribute("a", 60000, 0));
  EXPECT_FALSE(ledger.TryContribute("a", 6000, 1));
  EXPECT_EQ(ledger.WindowTotal("a", 1), 60000u);
  EXPECT_TRUE(ledger.TryContribute("a", 5536, 2));
}

struct Event {
  std::string site;
  uint32_t value;
  SimSeconds at;
};

// Direct recomputation from every accepted event so far.
bool OracleAccepts(const std::vector<Event>& accepted, const Event& e,
                   const BudgetLedger::Limits& limits) {
  uint64_t window = 0;
  uint64_t day = 0;
  for (const Event& a : accepted) {
    if (a.site != e.site) continue;
    if (a.at > e.at - limits.window) window += a.value;
    if (a.at > e.at - limits.day) day += a.value;
  }
  return window + e.value <= limits.window_cap &&
         day + e.value <= limits.day_cap;
}

TEST(BudgetLedgerTest, MatchesBruteForceWindowOracle) {
  std::mt19937_64 rng(42);
  for (int stream = 0; stream < 500; ++stream) {
    BudgetLedger::Limits limits;
    if (stream % 2 == 1) {
      // Small limits make the daily cap bind often.
      limits = {.window = 10, .window_cap = 100, .day = 60, .day_cap = 300};
    }
    BudgetLedger ledger(limits);
    std::vector<Event> accepted;
    SimSeconds now = 0;
    const uint32_t max_value =
        static_cast<uint32_t>(limits.window_cap / 2 + 1);
    for (int step = 0; step < 200; ++step) {
      now += static_cast<SimSeconds>(rng() % (limits.window / 2 + 2));
      Event e{std::string(1, static_cast<char>('a' + rng() % 3)),
              static_cast<uint32_t>(rng() % max_value), now};
      const bool expected = OracleAccepts(accepted, e, limits);
      ASSERT_EQ(ledger.TryContribute(e.site, e.value, e.at), expected)
          << "stream " << stream << " step " << step;
      if (expected) accepted.push_back(e);
    }
  }
}

}  // namespace
}  // namespace prau
