#pragma once

#include <cstdint>
#include <functional>

namespace sceneval {

// Worker thread cap: SCENE_EVAL_THREADS when set (clamped to >= 1),
// otherwise the hardware concurrency.
int worker_threads();

// Splits [0, n) into a fixed number of chunks (independent of the thread
// count) and invokes fn(chunk_index, begin, end) for each, possibly from
// several threads. Callers that reduce results must do so in chunk order so
// the outcome does not depend on SCENE_EVAL_THREADS.
void parallel_chunks(std::int64_t n,
                     const std::function<void(int, std::int64_t, std::int64_t)>& fn);

} // namespace sceneval
