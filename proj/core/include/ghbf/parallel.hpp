#pragma once

#include <cstddef>
#include <functional>

namespace ghbf {

// Worker count for internal parallel loops. Reads GHBF_THREADS once;
// falls back to std::thread::hardware_concurrency().
unsigned thread_count();

// Overrides the worker count (0 restores the environment default).
void set_thread_count(unsigned threads);

// Runs body(begin, end) over disjoint contiguous chunks of [0, count).
// Each index is visited exactly once, so results do not depend on the
// number of workers as long as body writes only to its own indices.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace ghbf
