#ifndef AFFCM_PARALLEL_HPP
#define AFFCM_PARALLEL_HPP

#include <Eigen/Core>

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace affcm {

/// Thread cap from AFFCM_THREADS, falling back to the hardware concurrency.
inline int default_thread_count() {
    if (const char* env = std::getenv("AFFCM_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n >= 1) return n;
        } catch (const std::exception&) {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/**
 * Runs body(begin, end) over contiguous blocks of [0, count). Blocks are
 * disjoint, so a body that only writes to its own indices produces the same
 * result for any thread count.
 */
template <typename Body>
void parallel_for(Eigen::Index count, int threads, Body&& body) {
    constexpr Eigen::Index kMinBlock = 256;
    const Eigen::Index workers =
        std::min<Eigen::Index>(std::max(1, threads), (count + kMinBlock - 1) / kMinBlock);
    if (workers <= 1) {
        body(Eigen::Index(0), count);
        return;
    }
    const Eigen::Index block = (count + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers - 1));
    for (Eigen::Index w = 1; w < workers; ++w) {
        const Eigen::Index begin = w * block;
        const Eigen::Index end = std::min(count, begin + block);
        if (begin < end) pool.emplace_back([&body, begin, end] { body(begin, end); });
    }
    body(Eigen::Index(0), std::min(count, block));
    for (auto& t : pool) t.join();
}

}  // namespace affcm

#endif
