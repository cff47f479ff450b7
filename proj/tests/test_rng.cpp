#include "hscm/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace hscm::rng;

TEST_CASE("philox4x32-10 known-answer vectors")
{
    CHECK(philox4x32_10({0u, 0u, 0u, 0u}, {0u, 0u}) == Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(philox4x32_10({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu})
          == Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(philox4x32_10({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u})
          == Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("hash bits depend on every key component")
{
    const auto base = hash_bits(1, Domain::Test, 2, 3);
    CHECK(base == hash_bits(1, Domain::Test, 2, 3));
    CHECK(base != hash_bits(2, Domain::Test, 2, 3));
    CHECK(base != hash_bits(1, Domain::Coordinates, 2, 3));
    CHECK(base != hash_bits(1, Domain::Test, 3, 2));
    CHECK(base != hash_bits(1ull << 40, Domain::Test, 2, 3));
}

TEST_CASE("unit conversions stay in range")
{
    CHECK(to_unit_open0(0) > 0.0);
    CHECK(to_unit_open0(~0ull) == 1.0);
    CHECK(to_unit(0) == 0.0);
    CHECK(to_unit(~0ull) < 1.0);
}

TEST_CASE("replica seeds are distinct")
{
    std::set<std::uint64_t> seen;
    for (std::uint32_t r = 0; r < 10000; ++r)
        seen.insert(replica_seed(7, r));
    CHECK(seen.size() == 10000);
}

TEST_CASE("stream moments")
{
    Stream s(42, Domain::Test, 0);
    const int n = 200000;
    double sum = 0.0, sq = 0.0, ex = 0.0, nm = 0.0, nm2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double u = s.uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u <= 1.0);
        sum += u;
        sq += u * u;
        ex += s.exponential(2.0);
        const double z = s.normal();
        nm += z;
        nm2 += z * z;
    }
    CHECK(std::abs(sum / n - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
    CHECK(std::abs(sq / n - 1.0 / 3.0) < 0.003);
    CHECK(std::abs(ex / n - 0.5) < 4.0 * 0.5 / std::sqrt(n));
    CHECK(std::abs(nm / n) < 4.0 / std::sqrt(n));
    CHECK(std::abs(nm2 / n - 1.0) < 0.01);
}

TEST_CASE("streams replay identically")
{
    Stream a(9, Domain::Test, 5, 6);
    Stream b(9, Domain::Test, 5, 6);
    for (int i = 0; i < 100; ++i)
        CHECK(a() == b());
}
