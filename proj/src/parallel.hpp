#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace helmpert::detail {

// Runs fn(begin, end) over contiguous chunks of [0, n). Each index is handled by
// exactly one call and the work per index does not depend on the chunking.
template <class Fn> void parallel_for_chunks(std::ptrdiff_t n, Fn &&fn) {
  const auto hw = static_cast<std::ptrdiff_t>(std::max(1u, std::thread::hardware_concurrency()));
  const std::ptrdiff_t workers = std::min<std::ptrdiff_t>(hw, std::max<std::ptrdiff_t>(1, n / 16));
  if (workers <= 1) {
    fn(std::ptrdiff_t{0}, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (std::ptrdiff_t w = 0; w < workers; ++w) {
    const std::ptrdiff_t begin = n * w / workers;
    const std::ptrdiff_t end = n * (w + 1) / workers;
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto &t : pool) t.join();
}

} // namespace helmpert::detail
