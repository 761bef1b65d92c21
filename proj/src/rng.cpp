#include "steinfx/rng.hpp"

namespace steinfx {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
    const std::uint64_t prod = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(prod >> 32);
    lo = static_cast<std::uint32_t>(prod);
}

}  // namespace

std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> ctr,
                                           std::array<std::uint32_t, 2> key) noexcept {
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kPhiloxW0;
            key[1] += kPhiloxW1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
        mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

RandomStream::RandomStream(std::uint64_t master_seed, std::uint64_t stream_id, std::uint32_t chunk) noexcept
    : key_{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32)},
      counter_{0u, chunk, static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32)} {}

void RandomStream::refill() noexcept {
    const auto block = philox4x32_10(counter_, key_);
    // Block counter wraps after 2^32 blocks (2^33 outputs) per chunk; callers
    // never draw that much from a single chunk.
    ++counter_[0];
    // Served last-to-first by next_u64.
    buffer_[1] = (static_cast<std::uint64_t>(block[1]) << 32) | block[0];
    buffer_[0] = (static_cast<std::uint64_t>(block[3]) << 32) | block[2];
    buffered_ = 2;
}

void RandomStream::fill_normal(std::span<double> out) noexcept {
    std::size_t i = 0;
    for (; i + 1 < out.size(); i += 2) {
        const auto z = normal_pair();
        out[i] = z[0];
        out[i + 1] = z[1];
    }
    if (i < out.size()) {
        out[i] = normal_pair()[0];
    }
}

RandomStream derive_stream(std::uint64_t master_seed, std::uint64_t stream_id) noexcept {
    return RandomStream(master_seed, stream_id, 0);
}

RandomStream derive_stream(const SeedSpec& seed, std::uint32_t chunk) noexcept {
    return RandomStream(seed.master_seed, seed.stream_id, chunk);
}

Point sample_gaussian(RandomStream& g, const Point& mean, double sigma) {
    if (!(sigma > 0.0)) {
        throw DomainError("sample_gaussian: sigma must be > 0");
    }
    Point out(mean.size());
    g.fill_normal(out.coords());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = mean[i] + sigma * out[i];
    return out;
}

}  // namespace steinfx
