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
// Command-line front end for the linkage lab.
//
//   prau_lab theorem --epsilon 10 --visitors 1000000 --buyers 2
//   prau_lab collusion-table --epsilon 10,1 --accusations 1000,10000
//   prau_lab scenario3 --config lab.conf --out ppv.csv

#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "absl/strings/str_cat.h"
#include "prau/harness/csv.h"
#include "prau/harness/experiment_config.h"
#include "prau/harness/experiments.h"

namespace {

using prau::harness::ExperimentConfig;

struct FlagSpec {
  const char* key;
  const char* help;
};

constexpr FlagSpec kValueFlags[] = {
    {"epsilon", "privacy loss budget(s), comma-separated"},
    {"buyers", "colluding buyer count(s) n"},
    {"visitors", "candidates u (accuracy, scenario 2) or visitors"},
    {"pool", "candidate pool size(s)"},
    {"accusations", "accusation count(s)"},
    {"hashes", "Bloom hash functions (default 20)"},
    {"bloom-bits", "Bloom filter width m (default 201000)"},
    {"replicas", "independent replicas (default 5)"},
    {"seed", "64-bit base seed"},
    {"out", "output CSV path; '-' or empty for stdout"},
    {"jobs", "parallel workers"},
    {"mc-trials", "Monte Carlo trials per accuracy cell"},
    {"max-buyers", "collusion-table search limit (default 300)"},
    {"visit-secondary", "scenario 1: target visits the secondary site"},
};

constexpr FlagSpec kBoolFlags[] = {
    {"raw", "also emit per-replica raw rows"},
    {"noiseless", "diagnostic: release aggregates without noise"},
    {"enforce-kanon", "enforce k-anonymity; colluders use a covert channel"},
};

struct Subcommand {
  CLI::App* app;
  std::string config_path;
  std::vector<std::pair<std::string, std::string>> values;
  std::vector<std::pair<std::string, bool>> bools;
};

void AddFlags(Subcommand& sub) {
  sub.app->add_option("--config", sub.config_path, "key=value config file");
  sub.values.reserve(std::size(kValueFlags));
  for (const FlagSpec& flag : kValueFlags) {
    sub.values.emplace_back(flag.key, "");
    sub.app->add_option(absl::StrCat("--", flag.key), sub.values.back().second,
                        flag.help);
  }
  sub.bools.reserve(std::size(kBoolFlags));
  for (const FlagSpec& flag : kBoolFlags) {
    sub.bools.emplace_back(flag.key, false);
    sub.app->add_flag(absl::StrCat("--", flag.key), sub.bools.back().second,
                      flag.help);
  }
}

int Fail(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Protected Audience linkage lab"};
  app.require_subcommand(1);

  const char* kinds[] = {"theorem",   "accuracy-curve", "collusion-table",
                         "fpr-curve", "scenario1",      "scenario2",
                         "scenario3"};
  std::vector<Subcommand> subs;
  subs.reserve(std::size(kinds));
  for (const char* kind : kinds) {
    subs.push_back({app.add_subcommand(kind), "", {}, {}});
    AddFlags(subs.back());
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  for (Subcommand& sub : subs) {
    if (!sub.app->parsed()) continue;
    ExperimentConfig config;
    if (absl::Status s = prau::harness::ApplySetting(
            "experiment", sub.app->get_name(), config);
        !s.ok()) {
      return Fail(std::string(s.message()));
    }
    if (!sub.config_path.empty()) {
      absl::Status s =
          prau::harness::ApplyConfigFile(sub.config_path, config);
      if (!s.ok()) return Fail(std::string(s.message()));
    }
    for (const auto& [key, value] : sub.values) {
      if (sub.app->count(absl::StrCat("--", key)) == 0) continue;
      absl::Status s = prau::harness::ApplySetting(key, value, config);
      if (!s.ok()) return Fail(std::string(s.message()));
    }
    for (const auto& [key, value] : sub.bools) {
      if (!value) continue;
      absl::Status s = prau::harness::ApplySetting(key, "true", config);
      if (!s.ok()) return Fail(std::string(s.message()));
    }

    absl::StatusOr<prau::harness::ExperimentOutput> out =
        prau::harness::RunExperiment(config);
    if (!out.ok()) return Fail(std::string(out.status().message()));
    if (absl::Status s = prau::harness::EmitCsv(out->table, config.out);
        !s.ok()) {
      return Fail(std::string(s.message()));
    }
    if (config.raw && !out->raw.header.empty()) {
      const bool to_stdout = config.out.empty() || config.out == "-";
      if (to_stdout) std::cout << "\n";
      absl::Status s = prau::harness::EmitCsv(
          out->raw, to_stdout ? "-" : absl::StrCat(config.out, ".raw.csv"));
      if (!s.ok()) return Fail(std::string(s.message()));
    }
    std::cerr << out->summary << " (" << out->elapsed_seconds << " s)\n";
  }
  return 0;
}
