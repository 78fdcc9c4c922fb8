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
// Minimal CSV output: a header, string cells, '.' decimal point, one row per
// line, always newline-terminated. Numbers use the shortest round-trip form
// so output bytes depend only on the values.

#ifndef PRAU_HARNESS_CSV_H_
#define PRAU_HARNESS_CSV_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/status.h"

namespace prau::harness {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string FormatDouble(double value);
std::string FormatInt(int64_t value);

std::string ToCsvString(const CsvTable& table);

// Writes to `path`, or to stdout when path is empty or "-".
absl::Status EmitCsv(const CsvTable& table, const std::string& path);

// Splits CSV text produced by ToCsvString back into cells. Quoted cells are
// not supported since the writer never produces them.
CsvTable ParseCsv(const std::string& text);

}  // namespace prau::harness

#endif  // PRAU_HARNESS_CSV_H_
