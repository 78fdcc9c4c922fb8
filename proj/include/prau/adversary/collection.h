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
// Report collection on the colluders' side. The first report of a round
// starts an hour-long window during which the network stops running linking
// auctions; the round closes when the expected number of reports arrived or
// the window ran out.

#ifndef PRAU_ADVERSARY_COLLECTION_H_
#define PRAU_ADVERSARY_COLLECTION_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "prau/adversary/colluder_network.h"
#include "prau/browser/browser_engine.h"
#include "prau/protocol/types.h"

namespace prau::adversary {

struct TrackerState {
  SimSeconds suspended_until = std::numeric_limits<SimSeconds>::min();
  int64_t rounds_closed = 0;

  bool IsSuspended(SimSeconds now) const { return now < suspended_until; }
};

struct ReportBatch {
  std::vector<SealedReport> reports;
  // Arrival time of each report, parallel to `reports`.
  std::vector<SimSeconds> arrived_at;
  // False when the window closed before every expected report arrived.
  bool complete = false;
  std::optional<SimSeconds> first_report_at;
  SimSeconds closed_at = 0;
};

class CollectionRound {
 public:
  CollectionRound(const ColluderNetwork& network, TrackerState& state,
                  size_t expected_reports);

  // Keeps reports addressed to a colluder and returns how many were kept.
  size_t Receive(std::vector<SealedReport> delivered, SimSeconds now);

  bool IsComplete() const { return batch_.reports.size() >= expected_; }
  // End of the collection window; unset until the first report arrives.
  std::optional<SimSeconds> deadline() const;

  ReportBatch Close(SimSeconds now);

 private:
  const ColluderNetwork& network_;
  TrackerState& state_;
  size_t expected_;
  ReportBatch batch_;
};

// Advances `clock` through the engine's delivery schedule until the round
// closes. With nothing pending and nothing received, returns an empty,
// incomplete batch at the current time.
ReportBatch RunCollectionRound(BrowserEngine& engine,
                               const ColluderNetwork& network,
                               TrackerState& state, size_t expected_reports,
                               SimClock& clock);

}  // namespace prau::adversary

#endif  // PRAU_ADVERSARY_COLLECTION_H_
