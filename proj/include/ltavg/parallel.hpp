// Worker pool over an index range with in-order delivery of results.
#pragma once

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace ltavg {

inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

// Computes fn(i) for i in [0, n) and hands results to emit(i, result) in
// ascending i.  At most `window` results are held ahead of the emitter, so
// workers block instead of racing arbitrarily far ahead.  The first exception
// thrown by a worker or by emit is rethrown on the calling thread.
template <class R, class Fn, class Emit>
void parallel_ordered(std::size_t n, unsigned threads, std::size_t window, Fn fn, Emit emit) {
  threads = std::max(1u, std::min<unsigned>(resolve_threads(threads), static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  window = std::max<std::size_t>(window, threads);
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) emit(i, fn(i));
    return;
  }
  std::mutex mu;
  std::condition_variable cv;
  std::vector<std::optional<R>> slots(n);
  std::size_t next_task = 0, next_emit = 0;
  std::exception_ptr error;

  auto worker = [&] {
    for (;;) {
      std::size_t i;
      {
        std::unique_lock<std::mutex> lock(mu);
        cv.wait(lock, [&] { return error || next_task >= n || next_task < next_emit + window; });
        if (error || next_task >= n) return;
        i = next_task++;
      }
      try {
        R r = fn(i);
        std::lock_guard<std::mutex> lock(mu);
        slots[i] = std::move(r);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
      }
      cv.notify_all();
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  try {
    while (next_emit < n) {
      std::optional<R> r;
      {
        std::unique_lock<std::mutex> lock(mu);
        cv.wait(lock, [&] { return error || slots[next_emit].has_value(); });
        if (error) break;
        r = std::move(slots[next_emit]);
        slots[next_emit].reset();
      }
      emit(next_emit, std::move(*r));
      {
        std::lock_guard<std::mutex> lock(mu);
        ++next_emit;
      }
      cv.notify_all();
    }
  } catch (...) {
    std::lock_guard<std::mutex> lock(mu);
    if (!error) error = std::current_exception();
  }
  cv.notify_all();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

template <class R, class Fn>
std::vector<R> parallel_map(std::size_t n, unsigned threads, Fn fn) {
  std::vector<R> out;
  out.reserve(n);
  parallel_ordered<R>(n, threads, n, fn, [&](std::size_t, R&& r) { out.push_back(std::move(r)); });
  return out;
}

}  // namespace ltavg
