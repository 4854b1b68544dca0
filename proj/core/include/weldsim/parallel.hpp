#pragma once

#include <cstddef>
#include <functional>

namespace weldsim {

/// Resolve a thread-count request: 0 means "use the hardware concurrency".
int resolve_threads(int n_threads);

/// Run body(i) for i in [0, n) on up to n_threads threads.
///
/// Work is split into contiguous static chunks, so the set of indices each
/// thread handles is a pure function of (n, n_threads). Callers that need
/// bit-reproducible results must accumulate into per-index storage and
/// reduce sequentially afterwards; every use in this library does so, which
/// makes all outputs independent of the thread count.
void parallel_for(std::size_t n, int n_threads, const std::function<void(std::size_t)>& body);

} // namespace weldsim
