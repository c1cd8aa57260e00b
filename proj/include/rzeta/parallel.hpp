#pragma once
#include <cstdint>
#include <thread>
#include <vector>

namespace rzeta {

/// Deterministic parallel reduction over [0, n): the range is split into one
/// contiguous chunk per worker, partial results are merged in worker order, so
/// the outcome does not depend on the worker count for commutative merges.
template <class State, class Body, class Merge>
State parallel_reduce(int64_t n, int workers, State init, Body body, Merge merge) {
  if (workers < 1) workers = 1;
  if (workers == 1 || n < 2048) {
    State s = init;
    body(0, n, s);
    return s;
  }
  std::vector<State> parts(workers, init);
  std::vector<std::thread> threads;
  int64_t chunk = (n + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    int64_t lo = w * chunk, hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back([&, lo, hi, w] { body(lo, hi, parts[w]); });
  }
  for (auto& t : threads) t.join();
  State s = std::move(parts[0]);
  for (int w = 1; w < int(parts.size()); ++w) merge(s, parts[w]);
  return s;
}

inline int default_workers() {
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : int(hc);
}

}  // namespace rzeta
