#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "steinfx/core.hpp"

namespace steinfx {

/// Draws per chunk. Fixed, so the chunk decomposition (and therefore every
/// random stream and every partial sum) is independent of the worker count.
inline constexpr std::uint64_t kChunkSize = 8192;

/// Run fn(chunk_index, first_draw, draw_count) over ceil(n / kChunkSize)
/// chunks on up to `workers` threads. Results come back in chunk order so
/// the caller can reduce them sequentially.
template <class Result, class Fn>
std::vector<Result> run_chunked(std::uint64_t n, unsigned workers, Fn fn) {
    const std::uint64_t chunks = (n + kChunkSize - 1) / kChunkSize;
    if (chunks > 0xFFFFFFFFull) {
        throw DomainError("run_chunked: too many draws for the chunk counter");
    }
    std::vector<Result> results(chunks);
    auto body = [&](std::uint64_t c) {
        const std::uint64_t first = c * kChunkSize;
        const std::uint64_t count = std::min(kChunkSize, n - first);
        results[c] = fn(static_cast<std::uint32_t>(c), first, count);
    };

    const unsigned threads = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, workers), chunks));
    if (threads <= 1) {
        for (std::uint64_t c = 0; c < chunks; ++c) body(c);
        return results;
    }

    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (std::uint64_t c = next++; c < chunks; c = next++) {
                try {
                    body(c);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(failure_mutex);
                    if (!failure) failure = std::current_exception();
                    next = chunks;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
    return results;
}

/// Compensated first and second raw moments of a per-draw quantity.
struct MomentSums {
    CompensatedSum sum;
    CompensatedSum sum_sq;
    std::uint64_t count = 0;

    void add(double v) noexcept {
        sum.add(v);
        sum_sq.add(v * v);
        ++count;
    }
    void merge(const MomentSums& other) noexcept {
        sum.add(other.sum);
        sum_sq.add(other.sum_sq);
        count += other.count;
    }
    [[nodiscard]] MCResult result() const { return MCResult::mean(sum.value(), sum_sq.value(), count); }
};

/// Stream id for the k-th sub-experiment of a seed (SplitMix64 finaliser).
[[nodiscard]] inline std::uint64_t child_stream_id(std::uint64_t stream_id, std::uint64_t k) noexcept {
    std::uint64_t z = stream_id + 0x9E3779B97F4A7C15ull * (k + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace steinfx
