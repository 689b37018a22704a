#include <doctest.h>

#include <cmath>
#include <vector>

#include "mbcsim/rng.hpp"

using namespace mbcsim;

TEST_CASE("streams are reproducible and keyed independently") {
    Rng a(stream_key(42, 7, StreamPurpose::noise, 0));
    Rng b(stream_key(42, 7, StreamPurpose::noise, 0));
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    Rng c(stream_key(42, 7, StreamPurpose::signs, 0));
    bool all_equal = true;
    Rng a2(stream_key(42, 7, StreamPurpose::noise, 0));
    for (int i = 0; i < 16; ++i) all_equal &= (a2.next_u64() == c.next_u64());
    CHECK_FALSE(all_equal);
}

TEST_CASE("below is unbiased over small ranges") {
    Rng rng(1234);
    std::vector<int> counts(5, 0);
    const int reps = 100000;
    for (int i = 0; i < reps; ++i) ++counts[rng.below(5)];
    for (int c : counts) {
        const double expected = reps / 5.0;
        const double se = std::sqrt(reps * 0.2 * 0.8);
        CHECK(std::abs(c - expected) < 5 * se);
    }
}

TEST_CASE("normal moments") {
    Rng rng(99);
    double sum = 0, sumsq = 0;
    const int reps = 200000;
    for (int i = 0; i < reps; ++i) {
        const double z = rng.normal();
        sum += z;
        sumsq += z * z;
    }
    const double mean = sum / reps;
    const double var = sumsq / reps - mean * mean;
    CHECK(std::abs(mean) < 5.0 / std::sqrt(reps));
    CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("shuffle hits every permutation of three") {
    Rng rng(5);
    std::vector<int> counts(6, 0);
    const int reps = 60000;
    for (int i = 0; i < reps; ++i) {
        int v[3] = {0, 1, 2};
        rng.shuffle(std::span<int>(v, 3));
        counts[static_cast<size_t>(v[0] * 2 + (v[1] > v[2] ? 1 : 0))]++;
    }
    for (int c : counts) CHECK(std::abs(c - reps / 6.0) < 5 * std::sqrt(reps * (1.0 / 6) * (5.0 / 6)));
}
