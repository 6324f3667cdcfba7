#pragma once

#include <cstddef>
#include <functional>

namespace epower {

/// EPOWER_THREADS when set to a positive integer, otherwise the hardware concurrency.
int worker_count();

/// Runs body(0..count-1) on up to worker_count() threads. Each index runs
/// exactly once; the first exception thrown by any task is rethrown here.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace epower
