#include "ftstat/rng.hpp"

#include <cmath>

namespace ftstat {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

} // namespace

std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t substream_seed(std::uint64_t master, std::uint64_t id) {
    return splitmix64_mix(master + (id + 1) * kGolden);
}

Xoshiro256pp::Xoshiro256pp(std::uint64_t seed) {
    std::uint64_t state = seed;
    for (auto& word : s_) {
        state += kGolden;
        word = splitmix64_mix(state);
    }
}

std::uint64_t Xoshiro256pp::next() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double Xoshiro256pp::uniform01() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

double NormalSampler::next() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_;
    }
    for (;;) {
        const double u = 2.0 * rng_.uniform01() - 1.0;
        const double v = 2.0 * rng_.uniform01() - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) {
            const double f = std::sqrt(-2.0 * std::log(s) / s);
            cached_ = v * f;
            has_cached_ = true;
            return u * f;
        }
    }
}

} // namespace ftstat
