#pragma once

#include <cstdint>

namespace ftstat {

// All randomness in the library flows through the two primitives below.
//
// Substream derivation: substream_seed(master, id) returns element id+1 of
// the SplitMix64 sequence started at `master`, i.e. the SplitMix64
// finalizer applied to master + (id+1) * 0x9E3779B97F4A7C15. Every consumer
// (bootstrap replicate k, Monte Carlo run r, operator draw, innovation
// stream, ...) owns its id, which makes results reproducible and
// independent of thread scheduling. Determinism is promised per build, not
// across languages or hardware.

std::uint64_t splitmix64_mix(std::uint64_t z);
std::uint64_t substream_seed(std::uint64_t master, std::uint64_t id);

// xoshiro256++ (Blackman/Vigna), state seeded through SplitMix64.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed);
    std::uint64_t next();
    // Uniform on [0,1) with 53 random bits.
    double uniform01();

private:
    std::uint64_t s_[4];
};

// Standard normals via Marsaglia's polar rejection method.
class NormalSampler {
public:
    explicit NormalSampler(std::uint64_t seed) : rng_(seed) {}
    double next();

private:
    Xoshiro256pp rng_;
    double cached_ = 0.0;
    bool has_cached_ = false;
};

} // namespace ftstat
