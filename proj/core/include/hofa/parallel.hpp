#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace hofa {

/// Number of worker threads used by the reductions below. Defaults to the
/// hardware concurrency; 1 disables threading.
std::size_t worker_count();
void set_worker_count(std::size_t workers);

namespace detail {

inline constexpr std::size_t kReductionBlock = 1024;

// Runs body(begin, end) over contiguous chunks of [0, count) on the worker
// pool. Chunks are disjoint; ordering between them is unspecified.
void parallel_for_blocks(std::size_t count,
                         const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace detail

/// Deterministic sum of term(0) + ... + term(count - 1).
///
/// Terms are summed sequentially inside fixed blocks of kReductionBlock
/// indices and the block sums are then combined by a pairwise tree. The block
/// layout does not depend on the worker count, so the result is bitwise
/// identical for any number of workers.
template <class T, class Term>
T tree_sum(std::size_t count, Term&& term) {
  if (count == 0) return T{};
  const std::size_t blocks = (count + detail::kReductionBlock - 1) / detail::kReductionBlock;
  std::vector<T> partial(blocks, T{});
  detail::parallel_for_blocks(blocks, [&](std::size_t b0, std::size_t b1) {
    for (std::size_t b = b0; b < b1; ++b) {
      const std::size_t lo = b * detail::kReductionBlock;
      const std::size_t hi = lo + detail::kReductionBlock < count ? lo + detail::kReductionBlock : count;
      T acc{};
      for (std::size_t i = lo; i < hi; ++i) acc += term(i);
      partial[b] = acc;
    }
  });
  std::size_t width = blocks;
  while (width > 1) {
    const std::size_t half = width / 2;
    for (std::size_t i = 0; i < half; ++i) partial[i] = partial[2 * i] + partial[2 * i + 1];
    if (width % 2 == 1) {
      partial[half] = partial[width - 1];
      width = half + 1;
    } else {
      width = half;
    }
  }
  return partial[0];
}

/// Fills out[i] = fn(i) for every i, in parallel.
template <class T, class Fn>
void parallel_fill(std::vector<T>& out, Fn&& fn) {
  detail::parallel_for_blocks(out.size(), [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) out[i] = fn(i);
  });
}

}  // namespace hofa
