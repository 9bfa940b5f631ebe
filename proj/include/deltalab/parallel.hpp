#pragma once

// Worker-count plumbing.  Every parallel construct here writes results into
// per-block slots and folds them in block order, so output never depends on
// the number of workers.

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace deltalab {

namespace detail {
inline int& thread_count_ref() {
    static int count = 0;  // 0 = not yet resolved
    return count;
}
}  // namespace detail

inline void set_thread_count(int n) { detail::thread_count_ref() = n > 0 ? n : 0; }

// Resolution order: DELTALAB_THREADS env var, then set_thread_count(),
// then hardware concurrency.
inline int thread_count() {
    if (const char* env = std::getenv("DELTALAB_THREADS")) {
        int n = std::atoi(env);
        if (n > 0) return n;
    }
    if (int n = detail::thread_count_ref(); n > 0) return n;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs fn(block) for block = 0..n_blocks-1 on the configured workers.
// Blocks are claimed via an atomic counter; fn must only touch state owned
// by its block.
template <typename F>
void parallel_blocks(std::size_t n_blocks, F&& fn) {
    int workers = thread_count();
    if (workers <= 1 || n_blocks <= 1) {
        for (std::size_t b = 0; b < n_blocks; ++b) fn(b);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t b = next.fetch_add(1);
            if (b >= n_blocks) return;
            fn(b);
        }
    };
    std::vector<std::thread> pool;
    int spawn = static_cast<int>(std::min<std::size_t>(workers, n_blocks)) - 1;
    pool.reserve(spawn);
    for (int i = 0; i < spawn; ++i) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
}

// Index-range version: [lo, hi) split into chunks of `grain`.
template <typename F>
void parallel_for(std::uint64_t lo, std::uint64_t hi, std::uint64_t grain, F&& fn) {
    if (hi <= lo) return;
    std::uint64_t n_blocks = (hi - lo + grain - 1) / grain;
    parallel_blocks(n_blocks, [&](std::size_t b) {
        std::uint64_t a = lo + b * grain;
        std::uint64_t z = std::min(hi, a + grain);
        fn(a, z);
    });
}

}  // namespace deltalab
