#pragma once

#include <cstddef>
#include <functional>

namespace qdev {

/// Worker cap for parallel loops. Defaults to QDEV_THREADS when set, else the
/// hardware concurrency.
int thread_count();
void set_thread_count(int n);

/// Runs body(i) for i in [0, n) on up to thread_count() threads. Each index is
/// visited exactly once; results must be written to disjoint slots.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace qdev
