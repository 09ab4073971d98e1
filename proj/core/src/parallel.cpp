#include "ghbf/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>
#include <vector>

namespace ghbf {
namespace {

std::atomic<unsigned> g_override{0};

unsigned environment_threads() {
  static const unsigned value = [] {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("GHBF_THREADS")) {
      try {
        long v = std::stol(env);
        if (v >= 1) return std::min<unsigned>(static_cast<unsigned>(v), 256u);
      } catch (...) {
      }
    }
    return hw;
  }();
  return value;
}

}  // namespace

unsigned thread_count() {
  unsigned o = g_override.load();
  return o ? o : environment_threads();
}

void set_thread_count(unsigned threads) { g_override.store(threads); }

void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body) {
  if (count == 0) return;
  unsigned workers = static_cast<unsigned>(std::min<std::size_t>(thread_count(), count));
  if (workers <= 1) {
    body(0, count);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers - 1);
  std::size_t chunk = (count + workers - 1) / workers;
  for (unsigned w = 1; w < workers; ++w) {
    std::size_t b = w * chunk;
    std::size_t e = std::min(count, b + chunk);
    if (b >= e) break;
    pool.emplace_back([&body, &errors, w, b, e] {
      try {
        body(b, e);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  try {
    body(0, std::min(count, chunk));
  } catch (...) {
    errors[0] = std::current_exception();
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace ghbf
