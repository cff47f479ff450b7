#pragma once

// Counter-based random numbers (Philox4x32-10). Every random draw in the
// library is a pure function of (seed, domain, index words, block), which
// makes sampling reproducible under any work partitioning.

#include <array>
#include <cmath>
#include <cstdint>

namespace hscm::rng {

using Counter = std::array<std::uint32_t, 4>;
using Key = std::array<std::uint32_t, 2>;

/// One application of the Philox4x32 bijection with 10 rounds.
inline Counter philox4x32_10(Counter ctr, Key key) noexcept
{
    constexpr std::uint32_t kMul0 = 0xD2511F53u;
    constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        if (round > 0) {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        const std::uint64_t p0 = static_cast<std::uint64_t>(kMul0) * ctr[0];
        const std::uint64_t p1 = static_cast<std::uint64_t>(kMul1) * ctr[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

/// Stream tags that keep independent uses of one seed apart.
enum class Domain : std::uint32_t
{
    Coordinates = 1,
    NaivePair = 2,
    FastAnchor = 3,
    Growth = 4,
    Perturbation = 5,
    Replica = 6,
    Test = 99
};

inline Key key_from_seed(std::uint64_t seed) noexcept
{
    return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
}

/// 53-bit uniform in (0, 1].
inline double to_unit_open0(std::uint64_t bits) noexcept
{
    return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

/// 53-bit uniform in [0, 1).
inline double to_unit(std::uint64_t bits) noexcept
{
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// 64 random bits determined by (seed, domain, a, b).
inline std::uint64_t hash_bits(std::uint64_t seed, Domain domain, std::uint32_t a, std::uint32_t b) noexcept
{
    const Counter out = philox4x32_10({0u, a, b, static_cast<std::uint32_t>(domain)}, key_from_seed(seed));
    return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

/// Sequential stream over consecutive counter blocks for a fixed
/// (seed, domain, a, b). Satisfies UniformRandomBitGenerator.
class Stream
{
public:
    using result_type = std::uint64_t;

    Stream(std::uint64_t seed, Domain domain, std::uint32_t a, std::uint32_t b = 0) noexcept
        : key_(key_from_seed(seed)), a_(a), b_(b), domain_(static_cast<std::uint32_t>(domain))
    {
    }

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return ~result_type{0}; }

    result_type operator()() noexcept
    {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const Counter out = philox4x32_10({block_++, a_, b_, domain_}, key_);
        spare_ = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
        have_spare_ = true;
        return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
    }

    double uniform() noexcept { return to_unit_open0((*this)()); }

    double exponential(double rate) noexcept { return -std::log(uniform()) / rate; }

    /// Standard normal via Box-Muller (one value per call).
    double normal() noexcept
    {
        const double u1 = uniform();
        const double u2 = to_unit((*this)());
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }

private:
    Key key_;
    std::uint32_t a_;
    std::uint32_t b_;
    std::uint32_t domain_;
    std::uint32_t block_ = 0;
    std::uint64_t spare_ = 0;
    bool have_spare_ = false;
};

/// Derives an independent 64-bit seed for replica r of a run.
inline std::uint64_t replica_seed(std::uint64_t seed, std::uint32_t replica, std::uint32_t salt = 0) noexcept
{
    return hash_bits(seed, Domain::Replica, replica, salt);
}

} // namespace hscm::rng
