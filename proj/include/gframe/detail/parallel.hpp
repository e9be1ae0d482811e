#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace gframe::detail {

// C(n, k) saturating at UINT64_MAX.
inline std::uint64_t binomial(int n, int k)
{
  if (k < 0 || k > n) { return 0; }
  k = std::min(k, n - k);
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i) {
    std::uint64_t const num = static_cast<std::uint64_t>(n - k + i);
    if (c > UINT64_MAX / num) { return UINT64_MAX; }
    c = c * num / static_cast<std::uint64_t>(i);
  }
  return c;
}

// Visits the k-subsets of {0..n-1} whose smallest element is `first`, in
// lexicographic order. visit(subset) returns false to stop early.
template <typename Visit> bool for_each_combination_from(int n, int k, int first, Visit &&visit)
{
  std::vector<int> idx(k);
  idx[0] = first;
  for (int i = 1; i < k; ++i) { idx[i] = first + i; }
  if (k == 0 || idx[k - 1] >= n) { return true; }
  while (true) {
    if (!visit(static_cast<std::vector<int> const &>(idx))) { return false; }
    int i = k - 1;
    while (i >= 1 && idx[i] == n - k + i) { --i; }
    if (i < 1) { return true; }
    ++idx[i];
    for (int j = i + 1; j < k; ++j) { idx[j] = idx[j - 1] + 1; }
  }
}

// Evaluates task(item) for item in [0, count) on `workers` threads with a
// static round-robin schedule; results come back indexed by item, so any
// reduction over them in item order is independent of the worker count.
template <typename Result, typename Task> std::vector<Result> parallel_map(int count, int workers, Task &&task)
{
  std::vector<Result> results(count > 0 ? count : 0);
  workers = std::clamp(workers, 1, std::max(1, count));
  if (workers == 1) {
    for (int item = 0; item < count; ++item) { results[item] = task(item); }
    return results;
  }
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (int item = w; item < count; item += workers) { results[item] = task(item); }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (auto const &e : errors) {
    if (e) { std::rethrow_exception(e); }
  }
  return results;
}

} // namespace gframe::detail
