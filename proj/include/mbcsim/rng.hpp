#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>

namespace mbcsim {

// splitmix64 finalizer; used for seeding and stream-key derivation.
inline uint64_t splitmix64_next(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

inline uint64_t hash_mix(uint64_t a, uint64_t b) {
    uint64_t s = a ^ (b + 0x9E3779B97F4A7C15ULL + (a << 6) + (a >> 2));
    return splitmix64_next(s);
}

// xoshiro256++ stream. One instance per (seed, replication, purpose, salt)
// tuple, so any replication can be recomputed in isolation and results do
// not depend on how replications are spread over workers.
class Rng {
public:
    Rng() : Rng(0) {}

    explicit Rng(uint64_t stream_key) {
        uint64_t sm = stream_key;
        for (auto& w : state_) w = splitmix64_next(sm);
        if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
    }

    uint64_t next_u64() {
        const uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    // Uniform in [0, 1), 53-bit resolution.
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    // Unbiased uniform integer in [0, n). Lemire's multiply-with-rejection.
    uint64_t below(uint64_t n) {
        uint64_t x = next_u64();
        __uint128_t mul = static_cast<__uint128_t>(x) * n;
        auto low = static_cast<uint64_t>(mul);
        if (low < n) {
            const uint64_t threshold = (0 - n) % n;
            while (low < threshold) {
                x = next_u64();
                mul = static_cast<__uint128_t>(x) * n;
                low = static_cast<uint64_t>(mul);
            }
        }
        return static_cast<uint64_t>(mul >> 64);
    }

    // Standard normal via Box-Muller; the paired draw is cached.
    double normal() {
        if (has_cached_) {
            has_cached_ = false;
            return cached_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * std::numbers::pi * u2;
        cached_ = r * std::sin(a);
        has_cached_ = true;
        return r * std::cos(a);
    }

    template <class T>
    void shuffle(std::span<T> v) {
        for (size_t i = v.size(); i > 1; --i) {
            const size_t j = below(i);
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    uint64_t state_[4];
    bool has_cached_ = false;
    double cached_ = 0.0;
};

// Purposes keep the random draws of unrelated pipeline stages on separate
// streams, which is what makes common-random-number pairing work: two
// scenario legs re-derive identical assignment/noise streams even when one
// of them consumes extra draws elsewhere.
enum class StreamPurpose : uint64_t {
    assignment = 0xA551,
    noise = 0x0153,
    signs = 0x5165,
    ties = 0x7135,
};

inline uint64_t stream_key(uint64_t seed, uint64_t replication, StreamPurpose purpose,
                           uint64_t salt) {
    uint64_t h = hash_mix(seed, replication);
    h = hash_mix(h, static_cast<uint64_t>(purpose));
    return hash_mix(h, salt);
}

struct ReplicationStreams {
    Rng assignment, noise, signs, ties;

    ReplicationStreams(uint64_t seed, uint64_t replication, uint64_t salt = 0)
        : assignment(stream_key(seed, replication, StreamPurpose::assignment, salt)),
          noise(stream_key(seed, replication, StreamPurpose::noise, salt)),
          signs(stream_key(seed, replication, StreamPurpose::signs, salt)),
          ties(stream_key(seed, replication, StreamPurpose::ties, salt)) {}
};

}  // namespace mbcsim
