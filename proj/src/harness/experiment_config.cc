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
#include "prau/harness/experiment_config.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string>
#include <system_error>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_split.h"
#include "prau/aggregation/aggregation_service.h"
#include "prau/protocol/object_hash.h"

namespace prau::harness {
namespace {

struct KindName {
  ExperimentKind kind;
  std::string_view name;
};

constexpr KindName kKindNames[] = {
    {ExperimentKind::kTheorem, "theorem"},
    {ExperimentKind::kAccuracyCurve, "accuracy-curve"},
    {ExperimentKind::kCollusionTable, "collusion-table"},
    {ExperimentKind::kFprCurve, "fpr-curve"},
    {ExperimentKind::kScenario1, "scenario1"},
    {ExperimentKind::kScenario2, "scenario2"},
    {ExperimentKind::kScenario3, "scenario3"},
};

template <typename T>
absl::StatusOr<T> ParseNumber(std::string_view key, std::string_view text) {
  T value{};
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "bad value '", AsAbsl(text), "' for ", AsAbsl(key)));
  }
  return value;
}

absl::StatusOr<bool> ParseBool(std::string_view key, std::string_view text) {
  if (text == "1" || text == "true" || text == "yes") return true;
  if (text == "0" || text == "false" || text == "no") return false;
  return absl::InvalidArgumentError(absl::StrCat(
      "bad boolean '", AsAbsl(text), "' for ", AsAbsl(key)));
}

template <typename T>
absl::Status ParseList(std::string_view key, std::string_view text,
                       std::vector<T>& out) {
  std::vector<T> values;
  for (absl::string_view piece : absl::StrSplit(AsAbsl(text), ',')) {
    piece = absl::StripAsciiWhitespace(piece);
    absl::StatusOr<T> v =
        ParseNumber<T>(key, std::string_view(piece.data(), piece.size()));
    if (!v.ok()) return v.status();
    values.push_back(*v);
  }
  if (values.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("empty list for ", AsAbsl(key)));
  }
  out = std::move(values);
  return absl::OkStatus();
}

template <typename T>
absl::Status ParseScalar(std::string_view key, std::string_view text,
                         T& out) {
  absl::StatusOr<T> v = ParseNumber<T>(key, text);
  if (!v.ok()) return v.status();
  out = *v;
  return absl::OkStatus();
}

absl::Status ParseFlag(std::string_view key, std::string_view text,
                       bool& out) {
  absl::StatusOr<bool> v = ParseBool(key, text);
  if (!v.ok()) return v.status();
  out = *v;
  return absl::OkStatus();
}

template <typename T>
absl::Status RequireAll(std::string_view what, const std::vector<T>& values,
                        bool (*ok)(T)) {
  if (values.empty()) {
    return absl::InvalidArgumentError(absl::StrCat(AsAbsl(what), " is empty"));
  }
  for (T v : values) {
    if (!ok(v)) {
      return absl::InvalidArgumentError(
          absl::StrCat("invalid ", AsAbsl(what), " value ", v));
    }
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<ExperimentKind> ParseExperimentKind(std::string_view name) {
  for (const KindName& entry : kKindNames) {
    if (entry.name == name) return entry.kind;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown experiment '", AsAbsl(name), "'"));
}

std::string_view ExperimentKindName(ExperimentKind kind) {
  for (const KindName& entry : kKindNames) {
    if (entry.kind == kind) return entry.name;
  }
  return "unknown";
}

absl::Status ExperimentConfig::Validate() const {
  if (absl::Status s = RequireAll<double>(
          "epsilon", epsilons,
          [](double e) { return e > 0 && e <= kMaxEpsilon; });
      !s.ok()) {
    return s;
  }
  if (absl::Status s = RequireAll<int64_t>(
          "buyers", buyers, [](int64_t n) { return n >= 0 && n <= 300; });
      !s.ok()) {
    return s;
  }
  if (absl::Status s = RequireAll<int64_t>(
          "visitors", visitors, [](int64_t u) { return u >= 1; });
      !s.ok()) {
    return s;
  }
  if (absl::Status s = RequireAll<int64_t>(
          "pool", pools, [](int64_t p) { return p >= 1 && p < (1 << 30); });
      !s.ok()) {
    return s;
  }
  if (absl::Status s = RequireAll<int64_t>(
          "accusations", accusations, [](int64_t k) { return k >= 0; });
      !s.ok()) {
    return s;
  }
  if (hashes < 1 || hashes > 20) {
    return absl::InvalidArgumentError("hashes must be in [1, 20]");
  }
  if (bloom_bits < hashes) {
    return absl::InvalidArgumentError("bloom-bits must be at least hashes");
  }
  if (replicas < 1) {
    return absl::InvalidArgumentError("replicas must be at least 1");
  }
  if (jobs < 1) return absl::InvalidArgumentError("jobs must be at least 1");
  if (mc_trials < 1) {
    return absl::InvalidArgumentError("mc-trials must be at least 1");
  }
  if (max_buyers < 1 || max_buyers > 300) {
    return absl::InvalidArgumentError("max-buyers must be in [1, 300]");
  }
  return absl::OkStatus();
}

absl::Status ApplySetting(std::string_view key, std::string_view value,
                          ExperimentConfig& config) {
  if (key == "experiment") {
    absl::StatusOr<ExperimentKind> kind = ParseExperimentKind(value);
    if (!kind.ok()) return kind.status();
    config.kind = *kind;
    return absl::OkStatus();
  }
  if (key == "epsilon") return ParseList(key, value, config.epsilons);
  if (key == "buyers") return ParseList(key, value, config.buyers);
  if (key == "visitors") return ParseList(key, value, config.visitors);
  if (key == "pool") return ParseList(key, value, config.pools);
  if (key == "accusations") return ParseList(key, value, config.accusations);
  if (key == "hashes") return ParseScalar(key, value, config.hashes);
  if (key == "bloom-bits") return ParseScalar(key, value, config.bloom_bits);
  if (key == "replicas") return ParseScalar(key, value, config.replicas);
  if (key == "seed") return ParseScalar(key, value, config.seed);
  if (key == "jobs") return ParseScalar(key, value, config.jobs);
  if (key == "mc-trials") return ParseScalar(key, value, config.mc_trials);
  if (key == "max-buyers") return ParseScalar(key, value, config.max_buyers);
  if (key == "visit-secondary") {
    return ParseFlag(key, value, config.visit_secondary);
  }
  if (key == "enforce-kanon") {
    return ParseFlag(key, value, config.enforce_kanon);
  }
  if (key == "noiseless") return ParseFlag(key, value, config.noiseless);
  if (key == "raw") return ParseFlag(key, value, config.raw);
  if (key == "out") {
    config.out = std::string(value);
    return absl::OkStatus();
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown setting '", AsAbsl(key), "'"));
}

absl::Status ApplyConfigFile(const std::string& path,
                             ExperimentConfig& config) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot read ", path));
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    absl::string_view text = absl::StripAsciiWhitespace(line);
    if (text.empty() || text.front() == '#') continue;
    const size_t eq = text.find('=');
    if (eq == absl::string_view::npos) {
      return absl::InvalidArgumentError(
          absl::StrCat(path, ":", line_number, ": expected key=value"));
    }
    absl::string_view key = absl::StripAsciiWhitespace(text.substr(0, eq));
    absl::string_view value = absl::StripAsciiWhitespace(text.substr(eq + 1));
    absl::Status s =
        ApplySetting(std::string_view(key.data(), key.size()),
                     std::string_view(value.data(), value.size()), config);
    if (!s.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat(path, ":", line_number, ": ", s.message()));
    }
  }
  return absl::OkStatus();
}

uint64_t ReplicaSeed(uint64_t seed, int64_t replica) {
  return seed ^ Mix64(static_cast<uint64_t>(replica));
}

}  // namespace prau::harness
