#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>

#include "steinfx/core.hpp"

namespace steinfx {

/// (master_seed, stream_id) pair identifying an independent random stream.
struct SeedSpec {
    std::uint64_t master_seed = 0;
    std::uint64_t stream_id = 0;

    friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

/// Philox4x32-10 block function (Salmon et al., SC'11).
/// Stateless bijection of the 128-bit counter for each 64-bit key.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) noexcept;

/// Counter-based random stream.
///
/// The key is the master seed; the counter packs (block, chunk, stream_id),
/// so distinct (master_seed, stream_id, chunk) triples address disjoint
/// parts of the Philox output space. Streams never share state and can be
/// created in any order, which is what makes Monte Carlo reductions
/// independent of the worker count.
class RandomStream {
public:
    RandomStream(std::uint64_t master_seed, std::uint64_t stream_id, std::uint32_t chunk = 0) noexcept;

    std::uint64_t next_u64() noexcept {
        if (buffered_ == 0) refill();
        return buffer_[--buffered_];
    }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Uniform on (0, 1].
    double uniform_open_low() noexcept {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Two independent standard normals via Box-Muller; both values are
    /// handed back so no sampler state survives between calls.
    std::array<double, 2> normal_pair() noexcept {
        const double r = std::sqrt(-2.0 * std::log(uniform_open_low()));
        const double theta = 2.0 * std::numbers::pi * uniform();
        return {r * std::cos(theta), r * std::sin(theta)};
    }

    /// Fill `out` with standard normals. Odd lengths discard the spare value.
    void fill_normal(std::span<double> out) noexcept;

    friend bool operator==(const RandomStream&, const RandomStream&) = default;

private:
    void refill() noexcept;

    std::array<std::uint32_t, 2> key_{};
    std::array<std::uint32_t, 4> counter_{};
    std::array<std::uint64_t, 2> buffer_{};
    int buffered_ = 0;
};

/// Reproducible stream for (master_seed, stream_id).
[[nodiscard]] RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_id) noexcept;
/// Sub-stream `chunk` of a SeedSpec, used for per-chunk parallel work.
[[nodiscard]] RandomStream derive_stream(const SeedSpec& seed, std::uint32_t chunk = 0) noexcept;

/// mean + sigma * Z, Z standard normal in mean.size() dimensions.
[[nodiscard]] Point sample_gaussian(RandomStream& g, const Point& mean, double sigma);

}  // namespace steinfx
