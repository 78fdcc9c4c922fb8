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
#include "prau/adversary/colluder_network.h"

#include <cmath>
#include <string>

#include "absl/strings/str_cat.h"
#include "prau/aggregation/aggregation_service.h"

namespace prau::adversary {

absl::StatusOr<ColluderNetwork> ColluderNetwork::Create(int n) {
  if (n < 1 || n > kMaxColluders) {
    return absl::InvalidArgumentError(absl::StrCat(
        "colluder count must be in [1, ", kMaxColluders, "], got ", n));
  }
  ColluderNetwork network;
  network.colluders_.reserve(n);
  network.colluders_.push_back(*Origin::Create("https://primary.example"));
  for (int i = 1; i < n; ++i) {
    network.colluders_.push_back(
        *Origin::Create(absl::StrCat("https://colluder-", i, ".example")));
  }
  network.members_.insert(network.colluders_.begin(),
                          network.colluders_.end());
  network.secondary_ = *Origin::Create("https://publisher.example");
  return network;
}

absl::Status AttackConfig::Validate() const {
  if (!(epsilon > 0) || epsilon > kMaxEpsilon) {
    return absl::InvalidArgumentError(
        absl::StrCat("epsilon must be in (0, ", kMaxEpsilon, "]"));
  }
  if (colluders < 1 || colluders > kMaxColluders) {
    return absl::InvalidArgumentError(
        absl::StrCat("colluders must be in [1, ", kMaxColluders, "]"));
  }
  if (hashes < 1 || hashes > kMaxContributionsPerReport) {
    return absl::InvalidArgumentError(absl::StrCat(
        "hashes must be in [1, ", kMaxContributionsPerReport, "]"));
  }
  if (bloom_bits < hashes) {
    return absl::InvalidArgumentError("bloom_bits must be at least hashes");
  }
  if (pool_size == 0) {
    return absl::InvalidArgumentError("pool_size must be positive");
  }
  if (accusations > pool_size) {
    return absl::InvalidArgumentError("accusations cannot exceed pool_size");
  }
  if (!(l1 > 0) || !std::isfinite(l1)) {
    return absl::InvalidArgumentError("l1 must be positive");
  }
  return absl::OkStatus();
}

}  // namespace prau::adversary
