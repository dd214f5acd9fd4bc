#include "sceneval/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace sceneval {

namespace {
constexpr int kChunks = 64;
}

int worker_threads() {
    if (const char* env = std::getenv("SCENE_EVAL_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
        return 1;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_chunks(std::int64_t n,
                     const std::function<void(int, std::int64_t, std::int64_t)>& fn) {
    if (n <= 0) return;
    int chunks = static_cast<int>(std::min<std::int64_t>(kChunks, n));
    std::int64_t per = (n + chunks - 1) / chunks;
    auto run_chunk = [&](int c) {
        std::int64_t begin = c * per;
        std::int64_t end = std::min(n, begin + per);
        if (begin < end) fn(c, begin, end);
    };

    int threads = std::min(worker_threads(), chunks);
    if (threads <= 1) {
        for (int c = 0; c < chunks; ++c) run_chunk(c);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (int c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
                run_chunk(c);
            }
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace sceneval
