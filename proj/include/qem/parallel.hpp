// Copyright 2026 The QEM Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace qem {

/// Shots per seeded batch. Batch b of a run seeded with s draws from
/// Rng(derive_seed(s, b)), so results depend on the seed and the shot count
/// only, never on the number of workers.
inline constexpr std::uint64_t kShotBatch = 1024;

/// Runs fn(batch_index, batch_shots) for every batch of `total` shots on up to
/// `jobs` threads and returns the results in batch order. The first
/// exception thrown by any batch is rethrown after all workers stop.
template <typename Fn>
auto run_batches(std::uint64_t total, int jobs, Fn fn) {
  using Result = decltype(fn(std::uint64_t{0}, std::uint64_t{0}));
  const std::uint64_t batches = (total + kShotBatch - 1) / kShotBatch;
  std::vector<Result> results(batches);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::uint64_t b = next.fetch_add(1);
      if (b >= batches) return;
      try {
        const std::uint64_t count = std::min(kShotBatch, total - b * kShotBatch);
        results[b] = fn(b, count);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(batches);
      }
    }
  };
  const int threads = static_cast<int>(std::min<std::uint64_t>(std::max(1, jobs), batches));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
  return results;
}

/// Pairwise (cascade) sum of a[lo, hi).
template <typename T, typename Get>
double pairwise_sum(const std::vector<T>& a, std::size_t lo, std::size_t hi, Get get) {
  if (hi <= lo) return 0.0;
  if (hi - lo == 1) return get(a[lo]);
  const std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(a, lo, mid, get) + pairwise_sum(a, mid, hi, get);
}

}  // namespace qem
