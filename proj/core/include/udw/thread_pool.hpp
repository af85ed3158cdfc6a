// Copyright 2026 The udw Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <condition_variable>
#include <cstddef>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace udw {

/// Fixed-size worker pool with a blocking `parallel_for`.
///
/// Work items write to their own output slots; callers reduce in index
/// order afterwards, so results never depend on the number of workers.
class ThreadPool {
 public:
  explicit ThreadPool(std::size_t workers = 1);
  ~ThreadPool();

  ThreadPool(const ThreadPool&) = delete;
  ThreadPool& operator=(const ThreadPool&) = delete;

  std::size_t size() const noexcept { return workers_.size() + 1; }

  /// Runs body(i) for i in [0, n). The calling thread participates.
  /// The first exception thrown by any item is rethrown here.
  void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

 private:
  void worker_loop();
  void drain();

  std::vector<std::thread> workers_;
  std::mutex mutex_;
  std::condition_variable wake_;
  std::condition_variable done_;
  const std::function<void(std::size_t)>* body_ = nullptr;
  std::size_t next_ = 0;
  std::size_t count_ = 0;
  std::size_t active_ = 0;
  std::size_t generation_ = 0;
  std::exception_ptr error_;
  bool stop_ = false;
};

/// Runs body(i) for i in [0, n), on `pool` when given, inline otherwise.
void for_each_index(ThreadPool* pool, std::size_t n,
                    const std::function<void(std::size_t)>& body);

}  // namespace udw
