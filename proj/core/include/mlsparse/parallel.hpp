#pragma once

#include <cstddef>
#include <functional>

namespace mlsparse {

/// Worker cap used by the library. Defaults to the MLSPARSE_THREADS
/// environment variable, or 1 when unset.
std::size_t thread_cap();
void set_thread_cap(std::size_t threads);

/// Runs body(k) for k in [0, count) on up to thread_cap() threads. Each
/// index runs exactly once; the first exception is rethrown after joining.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace mlsparse
