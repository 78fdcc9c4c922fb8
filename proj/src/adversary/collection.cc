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
#include "prau/adversary/collection.h"

#include <algorithm>
#include <utility>

namespace prau::adversary {

CollectionRound::CollectionRound(const ColluderNetwork& network,
                                 TrackerState& state, size_t expected_reports)
    : network_(network), state_(state), expected_(expected_reports) {}

size_t CollectionRound::Receive(std::vector<SealedReport> delivered,
                                SimSeconds now) {
  size_t kept = 0;
  for (SealedReport& report : delivered) {
    if (!network_.IsColluder(report.destination())) continue;
    if (!batch_.first_report_at.has_value()) {
      batch_.first_report_at = now;
      state_.suspended_until = now + kMaxReportDelay;
    }
    batch_.reports.push_back(std::move(report));
    batch_.arrived_at.push_back(now);
    ++kept;
  }
  return kept;
}

std::optional<SimSeconds> CollectionRound::deadline() const {
  if (!batch_.first_report_at.has_value()) return std::nullopt;
  return *batch_.first_report_at + kMaxReportDelay;
}

ReportBatch CollectionRound::Close(SimSeconds now) {
  batch_.complete = IsComplete();
  batch_.closed_at = now;
  ++state_.rounds_closed;
  return std::move(batch_);
}

ReportBatch RunCollectionRound(BrowserEngine& engine,
                               const ColluderNetwork& network,
                               TrackerState& state, size_t expected_reports,
                               SimClock& clock) {
  CollectionRound round(network, state, expected_reports);
  while (true) {
    round.Receive(engine.DeliverDueReports(clock.now()), clock.now());
    if (round.IsComplete()) break;
    std::optional<SimSeconds> next = engine.NextDeliveryTime();
    std::optional<SimSeconds> deadline = round.deadline();
    if (!next.has_value()) {
      if (deadline.has_value()) clock.AdvanceTo(*deadline);
      break;
    }
    if (deadline.has_value() && *next > *deadline) {
      clock.AdvanceTo(*deadline);
      break;
    }
    clock.AdvanceTo(std::max(*next, clock.now()));
  }
  return round.Close(clock.now());
}

}  // namespace prau::adversary
