// Copyright 2026 The lqo-mor Authors
// SPDX-License-Identifier: Apache-2.0

#include "lqo/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace lqo
{

namespace
{

std::atomic<int> g_max_threads{1};

}  // namespace

void set_max_threads(int threads)
{
  g_max_threads = std::max(1, threads);
}

int max_threads()
{
  return g_max_threads;
}

void parallel_for(Index n, const std::function<void(Index)> &body)
{
  const Index workers = std::min<Index>(g_max_threads, n);
  if (workers <= 1)
  {
    for (Index i = 0; i < n; ++i)
    {
      body(i);
    }
    return;
  }
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (Index w = 0; w < workers; ++w)
  {
    const Index begin = n * w / workers;
    const Index end = n * (w + 1) / workers;
    pool.emplace_back(
        [&, begin, end]
        {
          try
          {
            for (Index i = begin; i < end; ++i)
            {
              body(i);
            }
          }
          catch (...)
          {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!error)
            {
              error = std::current_exception();
            }
          }
        });
  }
  for (auto &t : pool)
  {
    t.join();
  }
  if (error)
  {
    std::rethrow_exception(error);
  }
}

}  // namespace lqo
