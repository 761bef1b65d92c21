#include <doctest.h>

#include <cmath>
#include <vector>

#include "steinfx/parallel.hpp"
#include "steinfx/rng.hpp"

using namespace steinfx;

TEST_SUITE("rng") {

TEST_CASE("philox4x32-10 known answers") {
    using A4 = std::array<std::uint32_t, 4>;
    CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == A4{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
    CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
          A4{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
    CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
          A4{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("same stream twice gives the same values") {
    RandomStream a = derive_stream(42, 0);
    RandomStream b = derive_stream(42, 0);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    CHECK(a == b);
}

TEST_CASE("distinct streams, seeds and chunks differ") {
    CHECK(derive_stream(42, 0).next_u64() != derive_stream(42, 1).next_u64());
    CHECK(derive_stream(42, 0).next_u64() != derive_stream(43, 0).next_u64());
    CHECK(derive_stream(SeedSpec{42, 0}, 0).next_u64() != derive_stream(SeedSpec{42, 0}, 1).next_u64());
    // stream ids that differ only in the high word
    CHECK(derive_stream(1, 1).next_u64() != derive_stream(1, 1ull << 32 | 1).next_u64());
}

TEST_CASE("uniform mean for stream (42, 7)") {
    RandomStream g = derive_stream(42, 7);
    const int n = 10000;
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = g.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
        s += u;
    }
    CHECK(std::fabs(s / n - 0.5) <= 4.0 / std::sqrt(12.0 * n));
}

TEST_CASE("uniform_open_low excludes zero") {
    RandomStream g = derive_stream(3, 3);
    for (int i = 0; i < 10000; ++i) {
        const double u = g.uniform_open_low();
        REQUIRE(u > 0.0);
        REQUIRE(u <= 1.0);
    }
}

TEST_CASE("normal moments") {
    RandomStream g = derive_stream(5, 0);
    const int n = 400000;
    std::vector<double> z(n);
    g.fill_normal(z);
    double m1 = 0, m2 = 0, m4 = 0;
    for (double v : z) {
        m1 += v;
        m2 += v * v;
        m4 += v * v * v * v;
    }
    m1 /= n;
    m2 /= n;
    m4 /= n;
    CHECK(std::fabs(m1) < 4.0 / std::sqrt(n));
    CHECK(std::fabs(m2 - 1.0) < 4.0 * std::sqrt(2.0 / n));
    CHECK(std::fabs(m4 - 3.0) < 4.0 * std::sqrt(96.0 / n));
}

TEST_CASE("odd-length fills discard the spare value") {
    RandomStream a = derive_stream(9, 9);
    RandomStream b = derive_stream(9, 9);
    std::vector<double> three(3), four(4);
    a.fill_normal(three);
    b.fill_normal(four);
    CHECK(three[0] == four[0]);
    CHECK(three[2] == four[2]);
    // both streams consumed the same number of pairs
    CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("sample_gaussian") {
    RandomStream g = derive_stream(1, 2);
    const Point mean{1, -2, 3};
    const Point tiny = sample_gaussian(g, mean, 1e-300);
    for (std::size_t i = 0; i < 3; ++i) CHECK(tiny[i] == doctest::Approx(mean[i]));
    CHECK_THROWS_AS((void)sample_gaussian(g, mean, 0.0), DomainError);
    CHECK_THROWS_AS((void)sample_gaussian(g, mean, -1.0), DomainError);
}

TEST_CASE("run_chunked results do not depend on worker count") {
    auto body = [](std::uint32_t c, std::uint64_t, std::uint64_t m) {
        RandomStream g = derive_stream(SeedSpec{77, 1}, c);
        MomentSums s;
        for (std::uint64_t i = 0; i < m; ++i) s.add(g.uniform());
        return s;
    };
    auto reduce = [](const std::vector<MomentSums>& parts) {
        MomentSums total;
        for (const auto& s : parts) total.merge(s);
        return total.result();
    };
    const std::uint64_t n = 5 * kChunkSize + 123;
    const MCResult one = reduce(run_chunked<MomentSums>(n, 1, body));
    const MCResult two = reduce(run_chunked<MomentSums>(n, 2, body));
    const MCResult eight = reduce(run_chunked<MomentSums>(n, 8, body));
    CHECK(one.n == n);
    CHECK(one.estimate == two.estimate);
    CHECK(one.estimate == eight.estimate);
    CHECK(one.std_error == eight.std_error);
}

TEST_CASE("run_chunked propagates exceptions") {
    auto body = [](std::uint32_t c, std::uint64_t, std::uint64_t) -> int {
        if (c == 3) throw DomainError("boom");
        return 0;
    };
    CHECK_THROWS_AS((void)run_chunked<int>(10 * kChunkSize, 4, body), DomainError);
}

}
