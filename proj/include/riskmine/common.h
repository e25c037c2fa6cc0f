// Copyright 2026 The Riskmine Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RISKMINE_COMMON_H_
#define RISKMINE_COMMON_H_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace riskmine {

// Raised for unrecoverable input or contract violations (unreadable files,
// malformed data files, undefined statistics).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-fatal diagnostics collected by loaders and selectors.
using Warnings = std::vector<std::string>;

inline void warn(Warnings* warnings, std::string message) {
  if (warnings != nullptr) warnings->push_back(std::move(message));
}

// Whether a risk term came from the curated seed list or from
// vector-similarity expansion.
enum class Origin { kSeed, kExpanded };

inline std::string_view origin_name(Origin origin) {
  return origin == Origin::kSeed ? "seed" : "expanded";
}

inline Origin parse_origin(std::string_view name) {
  if (name == "seed") return Origin::kSeed;
  if (name == "expanded") return Origin::kExpanded;
  throw Error("unknown origin '" + std::string(name) + "'");
}

// Runs fn(i) for i in [0, n) on up to `threads` workers. Work items are
// claimed from a shared counter, so callers must write results by index to
// stay deterministic. The first exception thrown by any worker is rethrown.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, threads), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto body = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace riskmine

#endif  // RISKMINE_COMMON_H_
