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
#ifndef PRAU_HARNESS_PARALLEL_H_
#define PRAU_HARNESS_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace prau::harness {

// Calls fn(i) for every i in [0, count) on up to `jobs` threads. Work is
// handed out in index order; callers write results into slot i so the
// assembled output does not depend on completion order.
template <typename Fn>
void ParallelFor(int64_t count, int64_t jobs, Fn&& fn) {
  jobs = std::clamp<int64_t>(jobs, 1, std::max<int64_t>(count, 1));
  if (jobs == 1) {
    for (int64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int64_t> next{0};
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (int64_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (int64_t i = next++; i < count; i = next++) fn(i);
    });
  }
  for (std::thread& t : workers) t.join();
}

}  // namespace prau::harness

#endif  // PRAU_HARNESS_PARALLEL_H_
