// Copyright (c) 2026 The dce-bands authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0.txt
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace dce::detail {

  /// DCE_THREADS if set and positive, else hardware concurrency.
  inline unsigned thread_count() {
    if (const char *env = std::getenv("DCE_THREADS")) {
      try {
        const int n = std::stoi(env);
        if (n > 0)
          return static_cast<unsigned>(n);
      } catch (const std::exception &) {
      }
    }
    return std::max(1u, std::thread::hardware_concurrency());
  }

  /// Runs fn(i) for i in [0, n) on contiguous chunks. Results must be written
  /// to per-index slots; the first exception is rethrown on the caller.
  template <class Fn> void parallel_for(std::size_t n, Fn &&fn) {
    const std::size_t workers = std::min<std::size_t>(thread_count(), n);
    if (workers <= 1) {
      for (std::size_t i = 0; i < n; ++i)
        fn(i);
      return;
    }
    std::exception_ptr error;
    std::mutex guard;
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = w * chunk; i < std::min(n, (w + 1) * chunk); ++i)
            fn(i);
        } catch (...) {
          std::lock_guard lock(guard);
          if (!error)
            error = std::current_exception();
        }
      });
    }
    for (auto &t : pool)
      t.join();
    if (error)
      std::rethrow_exception(error);
  }

} // namespace dce::detail
