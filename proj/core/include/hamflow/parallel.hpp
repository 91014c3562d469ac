#pragma once

#include <cstddef>
#include <functional>

namespace hamflow {

/// 0 -> hardware concurrency (at least 1).
unsigned resolve_threads(unsigned requested);

/// Runs fn(begin, end) over contiguous chunks of [0, n). Callers get
/// determinism by writing to disjoint, index-addressed output slots; the
/// chunking itself never feeds back into results.
void parallel_chunks(std::size_t n, unsigned threads,
                     const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace hamflow
