#pragma once

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace rabi {

template <class Fn>
void parallel_for(int count, int workers, Fn&& fn) {
  const int pool = std::max(1, std::min(workers, count));
  if (pool == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::jthread> threads;
  threads.reserve(pool);
  for (int w = 0; w < pool; ++w)
    threads.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
}

}  // namespace rabi
