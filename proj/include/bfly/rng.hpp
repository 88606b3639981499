#pragma once

#include <array>
#include <cstdint>

#include "bfly/common.hpp"

namespace bfly {

// xoshiro256++ seeded through splitmix64. Self-contained so that seeded runs
// produce identical streams on every platform and standard library.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& word : state_) word = splitmix64(x);
    }

    // Stream derived from (master seed, stream index); used to give each
    // experiment trial its own generator so parallel and serial runs agree.
    static Rng for_stream(std::uint64_t master_seed, std::uint64_t stream_index) {
        std::uint64_t x = master_seed ^ (0x9E3779B97F4A7C15ULL * (stream_index + 1));
        return Rng(splitmix64(x));
    }

    std::uint64_t next_u64() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform on [0, 1), 53 random bits.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Uniform on [0, 2*pi).
    double uniform_angle() { return uniform() * kTwoPi; }

    // Uniform on [-pi/2, pi/2); tan of this is a standard Cauchy variate.
    double uniform_half_angle() { return (uniform() - 0.5) * kPi; }

    // Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) { return next_u64() % bound; }

  private:
    static std::uint64_t splitmix64(std::uint64_t& x) {
        std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    static std::uint64_t rotl(std::uint64_t v, int k) { return (v << k) | (v >> (64 - k)); }

    std::array<std::uint64_t, 4> state_;
};

}  // namespace bfly
