#include "hofa/parallel.hpp"

#include <atomic>
#include <thread>

namespace hofa {

namespace {

std::atomic<std::size_t>& workers_slot() {
  static std::atomic<std::size_t> slot{0};
  return slot;
}

}  // namespace

std::size_t worker_count() {
  const std::size_t w = workers_slot().load();
  if (w != 0) return w;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void set_worker_count(std::size_t workers) { workers_slot().store(workers); }

namespace detail {

void parallel_for_blocks(std::size_t count,
                         const std::function<void(std::size_t, std::size_t)>& body) {
  if (count == 0) return;
  std::size_t workers = worker_count();
  if (workers > count) workers = count;
  if (workers <= 1) {
    body(0, count);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (std::size_t w = 1; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    if (lo >= count) break;
    const std::size_t hi = lo + chunk < count ? lo + chunk : count;
    pool.emplace_back([&body, lo, hi] { body(lo, hi); });
  }
  body(0, chunk < count ? chunk : count);
  for (auto& t : pool) t.join();
}

}  // namespace detail
}  // namespace hofa
