#pragma once

#include <cstddef>
#include <functional>

namespace lipjet {

/// Worker count: LIPJET_THREADS if set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned thread_count();

/// Number of chunks parallel_chunks will use for n items when each chunk
/// should hold at least min_chunk items.
std::size_t chunk_count(std::size_t n, std::size_t min_chunk);

/// Runs body(chunk, begin, end) over `chunks` contiguous ranges covering
/// [0, n), concurrently when chunks > 1. Reductions stay deterministic if
/// the caller stores per-chunk results and combines them in chunk order.
void parallel_chunks(std::size_t n, std::size_t chunks,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

}  // namespace lipjet
