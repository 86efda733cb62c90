#ifndef POLYDIST_PARALLEL_HPP
#define POLYDIST_PARALLEL_HPP

#include <cstddef>
#include <functional>

namespace polydist {

// Worker count: POLYDIST_THREADS if set, else hardware concurrency, clamped
// to [1, 16].
unsigned worker_count();

// Splits [0, n) into contiguous chunks, one worker per chunk. The callback
// receives (chunk_index, begin, end). Exceptions from workers are rethrown.
void parallel_chunks(std::size_t n,
                     const std::function<void(unsigned, std::size_t, std::size_t)>& fn);

}  // namespace polydist

#endif
