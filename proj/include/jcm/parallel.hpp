// parallel.hpp — Deterministic index-parallel loop for sweeps. Thread count is
// capped by the JCM_THREADS environment variable (0 or unset = automatic).

#pragma once

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace jcm {

inline unsigned sweep_thread_count() {
    unsigned n = 0;
    if (const char* env = std::getenv("JCM_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) n = static_cast<unsigned>(v);
    }
    if (n == 0) n = std::max(1u, std::thread::hardware_concurrency());
    return n;
}

// fn(i) must write only to slot i of preallocated storage; results are merged
// by index, so the output ordering is independent of scheduling.
template <typename Fn>
void parallel_for_indexed(std::size_t count, Fn&& fn) {
    const unsigned threads = std::min<std::size_t>(sweep_thread_count(), count ? count : 1);
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            for (std::size_t i = t; i < count; i += threads) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace jcm
