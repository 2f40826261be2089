#pragma once

#include <cstdint>
#include <span>

namespace ldp {

/// xoshiro256** seeded through splitmix64.
///
/// Stream splitting: replica `i` of a run seeded with `s` uses
/// `Rng::for_stream(s, i)`, whose state is filled by splitmix64 started at
/// `s + 0x9E3779B97F4A7C15 * (i + 1)`. Streams for distinct indices are
/// therefore disjoint seeds of the same generator and a replica's draws do
/// not depend on how many other replicas exist or in what order they run.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    static Rng for_stream(std::uint64_t seed, std::uint64_t index);

    std::uint64_t next_u64();

    // Uniform on [0, 1) with 53 random bits.
    double uniform();

    // Exponential with the given rate; rate must be positive.
    double exponential(double rate);

    // Index drawn with probability proportional to weights (nonnegative, positive sum).
    std::size_t categorical(std::span<const double> weights);

private:
    std::uint64_t s_[4];
};

std::uint64_t splitmix64(std::uint64_t& state);

} // namespace ldp
