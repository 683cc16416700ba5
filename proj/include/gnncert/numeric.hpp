#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <thread>
#include <vector>

namespace gnncert {

// Pairwise (cascade) summation: deterministic order, O(log n) error growth.
// Used for every cross-replicate statistic so results do not depend on the
// number of workers.
inline double pairwise_sum(std::span<const double> v) {
    const std::size_t n = v.size();
    if (n <= 32) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(v.subspan(0, half)) + pairwise_sum(v.subspan(half));
}

inline double pairwise_mean(std::span<const double> v) {
    return v.empty() ? 0.0 : pairwise_sum(v) / static_cast<double>(v.size());
}

// (2k-1)!! for the even Gaussian moments; double_factorial(-1) == 1.
inline double double_factorial(std::int64_t n) {
    double r = 1.0;
    for (std::int64_t k = n; k >= 2; k -= 2) r *= static_cast<double>(k);
    return r;
}

inline double pow_int(double x, int n) {
    double r = 1.0, base = x;
    for (int e = n; e > 0; e >>= 1) {
        if (e & 1) r *= base;
        base *= base;
    }
    return r;
}

// Runs body(begin, end) over a partition of [0, count) on `workers` threads.
// Partitioning affects scheduling only; callers must make per-index work
// independent of the chunk layout.
template <typename Body>
void parallel_chunks(std::int64_t count, int workers, Body&& body) {
    if (count <= 0) return;
    workers = std::max(1, workers);
    if (static_cast<std::int64_t>(workers) > count) workers = static_cast<int>(count);
    if (workers == 1) {
        body(std::int64_t{0}, count);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) {
        const std::int64_t begin = count * t / workers;
        const std::int64_t end = count * (t + 1) / workers;
        pool.emplace_back([&body, begin, end] { body(begin, end); });
    }
    for (auto& th : pool) th.join();
}

} // namespace gnncert
