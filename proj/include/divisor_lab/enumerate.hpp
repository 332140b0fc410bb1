#pragma once

// Exhaustive enumeration of assignment tuples over {0..order-1}^m in
// row-major order (tuple[0] most significant). Counting splits the index
// range into contiguous blocks, one per worker; since counts are sums the
// result does not depend on the split.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "divisor_lab/error.hpp"
#include "divisor_lab/group.hpp"

namespace divlab {

struct EnumerationOptions {
  std::uint64_t cap = 100'000'000;  // largest |G|^m we will walk
  unsigned threads = 0;             // 0 = hardware concurrency
  std::uint64_t min_parallel = 1U << 14;  // smaller spaces run on one thread
};

/// order^m, or throws SearchSpaceTooLarge if it exceeds the cap.
inline std::uint64_t search_space(std::size_t order, std::size_t m, std::uint64_t cap) {
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < m; ++i) {
    if (order != 0 && total > cap / order)
      throw Error(ErrorKind::search_space_too_large,
                  std::to_string(order) + "^" + std::to_string(m) + " exceeds cap " + std::to_string(cap));
    total *= order;
  }
  if (total > cap)
    throw Error(ErrorKind::search_space_too_large,
                std::to_string(order) + "^" + std::to_string(m) + " exceeds cap " + std::to_string(cap));
  return total;
}

namespace detail {

inline void decode_tuple(std::uint64_t index, std::size_t order, std::span<ElementId> out) {
  for (std::size_t i = out.size(); i-- > 0;) {
    out[i] = static_cast<ElementId>(index % order);
    index /= order;
  }
}

inline void advance_tuple(std::size_t order, std::span<ElementId> t) {
  for (std::size_t i = t.size(); i-- > 0;) {
    if (++t[i] < order) return;
    t[i] = 0;
  }
}

template <class Pred>
std::uint64_t count_block(std::size_t order, std::size_t m, std::uint64_t lo, std::uint64_t hi, Pred pred) {
  std::vector<ElementId> t(m, 0);
  decode_tuple(lo, order, t);
  std::uint64_t count = 0;
  for (std::uint64_t idx = lo; idx < hi; ++idx) {
    if (pred(std::span<const ElementId>(t))) ++count;
    advance_tuple(order, t);
  }
  return count;
}

}  // namespace detail

/// Number of tuples satisfying `pred`. Each worker gets its own copy of
/// `pred`, so it may keep mutable scratch state.
template <class Pred>
std::uint64_t count_assignments(std::size_t order, std::size_t m, const EnumerationOptions& opts, Pred pred) {
  const std::uint64_t total = search_space(order, m, opts.cap);
  unsigned workers = opts.threads != 0 ? opts.threads : std::max(1U, std::thread::hardware_concurrency());
  if (total < opts.min_parallel) workers = 1;
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, total == 0 ? 1 : total));
  if (workers <= 1) return detail::count_block(order, m, 0, total, pred);

  std::vector<std::uint64_t> partial(workers, 0);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t lo = total * w / workers;
      const std::uint64_t hi = total * (w + 1) / workers;
      pool.emplace_back([&, w, lo, hi] { partial[w] = detail::count_block(order, m, lo, hi, pred); });
    }
  }
  std::uint64_t sum = 0;
  for (auto p : partial) sum += p;
  return sum;
}

/// Calls `visit(tuple)` for every tuple in row-major order.
template <class Visit>
void for_each_assignment(std::size_t order, std::size_t m, std::uint64_t cap, Visit&& visit) {
  const std::uint64_t total = search_space(order, m, cap);
  std::vector<ElementId> t(m, 0);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    visit(std::span<const ElementId>(t));
    detail::advance_tuple(order, t);
  }
}

}  // namespace divlab
