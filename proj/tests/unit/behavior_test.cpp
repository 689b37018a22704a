#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include "mbcsim/assignment.hpp"
#include "mbcsim/behavior.hpp"

using namespace mbcsim;

namespace {

GroupConfig make(int n, int m) {
    GroupConfig cfg;
    cfg.n_proposals = n;
    cfg.reviews_per_pi = m;
    cfg.acceptance_rate = 0.15;
    return cfg;
}

Perception from_values(std::vector<double> v) {
    Perception p;
    p.value = std::move(v);
    return p;
}

bool is_permutation(std::span<const int32_t> scores) {
    std::set<int32_t> seen(scores.begin(), scores.end());
    if (seen.size() != scores.size()) return false;
    return *seen.begin() == 0 && *seen.rbegin() == static_cast<int32_t>(scores.size()) - 1;
}

}  // namespace

TEST_CASE("zero noise perceives merit exactly") {
    const auto profile = BehaviorProfile::honest(25);
    Rng noise(1), signs(2);
    const std::vector<int32_t> pile = {2, 8, 13};  // merits 3, 9, 14
    const Perception p = perceive(0, pile, profile, noise, signs);
    CHECK(p.value == std::vector<double>{3.0, 9.0, 14.0});
}

TEST_CASE("controversial perception is a symmetric bimodal mixture") {
    // merit 23 with sigma = 2.5, delta_mu = 5: mean -> 23, variance -> sigma^2 + delta_mu^2
    auto profile = BehaviorProfile::honest(25).with_noise(2.5).with_controversial(
        {id_of_merit(23)}, 5.0, 2.5);
    Rng noise(3), signs(4);
    const std::vector<int32_t> pile = {id_of_merit(23)};
    const int reps = 20000;
    double sum = 0, sumsq = 0;
    for (int t = 0; t < reps; ++t) {
        const Perception p = perceive(0, pile, profile, noise, signs);
        sum += p.value[0];
        sumsq += p.value[0] * p.value[0];
    }
    const double mean = sum / reps;
    const double var = sumsq / reps - mean * mean;
    const double true_var = 2.5 * 2.5 + 5.0 * 5.0;
    CHECK(std::abs(mean - 23.0) < 4 * std::sqrt(true_var / reps));
    CHECK(std::abs(var - true_var) < 4 * true_var * std::sqrt(2.0 / reps));
}

TEST_CASE("degenerate mixture with sigma zero hits both modes") {
    auto profile =
        BehaviorProfile::honest(25).with_controversial({id_of_merit(23)}, 5.0, 0.0);
    Rng noise(5), signs(6);
    const std::vector<int32_t> pile = {id_of_merit(23)};
    int high = 0, low = 0;
    for (int t = 0; t < 2000; ++t) {
        const Perception p = perceive(0, pile, profile, noise, signs);
        if (p.value[0] == 28.0) ++high;
        else if (p.value[0] == 18.0) ++low;
        else FAIL("perceived value outside the two modes");
    }
    CHECK(high > 800);
    CHECK(low > 800);
}

TEST_CASE("honest ranking follows perceived order") {
    Rng ties(7);
    CHECK(rank_honest(from_values({3, 9, 14}), ties) == std::vector<int32_t>{0, 1, 2});
    CHECK(rank_honest(from_values({3, 15, 14}), ties) == std::vector<int32_t>{0, 2, 1});
}

TEST_CASE("reverse ranking is the elementwise mirror of honest") {
    Rng ties(8);
    CHECK(rank_reverse(from_values({3, 9, 14}), ties) == std::vector<int32_t>{2, 1, 0});

    Rng value_rng(9);
    for (int t = 0; t < 200; ++t) {
        const int m = 2 + static_cast<int>(value_rng.below(7));
        std::vector<double> v(static_cast<size_t>(m));
        for (auto& x : v) x = value_rng.normal();
        Rng ties_a(100 + t), ties_b(100 + t);
        const auto honest = rank_honest(from_values(v), ties_a);
        const auto reverse = rank_reverse(from_values(v), ties_b);
        for (int s = 0; s < m; ++s) CHECK(reverse[s] == m - 1 - honest[s]);
    }
}

TEST_CASE("one-sided favor gives the ally m-1 and reverse-scores the rest") {
    Rng ties(10);
    // pile merits 1..7, ally id 3 (merit 4); best other proposal gets 0
    const std::vector<int32_t> pile = {0, 1, 2, 3, 4, 5, 6};
    const Perception p = from_values({1, 2, 3, 4, 5, 6, 7});
    const auto scores = rank_one_sided_favor(p, pile, 3, ties);
    CHECK(scores[3] == 6);
    CHECK(scores[6] == 0);  // best of the rest
    CHECK(scores[0] == 5);  // worst of the rest
    CHECK(is_permutation(scores));
}

TEST_CASE("favor strategies are inactive when the ally is outside the pile") {
    Rng value_rng(11);
    for (int t = 0; t < 100; ++t) {
        std::vector<double> v(5);
        for (auto& x : v) x = value_rng.normal();
        const std::vector<int32_t> pile = {1, 2, 3, 4, 5};
        Rng ta(200 + t), tb(200 + t), tc(200 + t);
        const auto honest = rank_honest(from_values(v), ta);
        CHECK(rank_one_sided_favor(from_values(v), pile, 17, tb) == honest);
        CHECK(rank_reciprocal_favor(from_values(v), pile, 17, tc) == honest);
    }
}

TEST_CASE("reciprocal favor keeps the honest order among the rest") {
    Rng ties(12);
    // ally is the worst in a pile of three: ally 2, others 0,1 by perceived order
    const std::vector<int32_t> pile = {3, 5, 9};
    const Perception p = from_values({4.0, 6.0, 10.0});
    const auto scores = rank_reciprocal_favor(p, pile, 3, ties);
    CHECK(scores == std::vector<int32_t>{2, 0, 1});

    // ally already the best: identical to honest
    Rng ta(13), tb(13);
    const auto honest = rank_honest(p, ta);
    CHECK(rank_reciprocal_favor(p, pile, 9, tb) == honest);
}

TEST_CASE("every strategy emits a permutation under noisy perception") {
    const GroupConfig cfg = make(12, 5);
    auto profile = BehaviorProfile::honest(12).with_noise(2.0);
    profile.with_reverse(3);
    profile.with_one_sided_favor(4, 7);
    profile.with_reciprocal_favor(5, 8);
    profile.with_controversial({9}, 5.0, 2.5);
    Rng rng(14);
    for (int t = 0; t < 100; ++t) {
        ReplicationStreams streams(99, static_cast<uint64_t>(t));
        const Assignment a = sample_assignment(cfg, streams.assignment);
        const ReviewRound round =
            submit_round(cfg, a, profile, streams.noise, streams.signs, streams.ties);
        for (int i = 0; i < 12; ++i) CHECK(is_permutation(round.scores(i)));
    }
}

TEST_CASE("exact perceived ties break in both directions") {
    const Perception p = from_values({5.0, 5.0});
    int first_wins = 0;
    const int reps = 4000;
    for (int t = 0; t < reps; ++t) {
        Rng ties(static_cast<uint64_t>(t) + 1000);
        const auto scores = rank_honest(p, ties);
        first_wins += scores[0] == 1;
    }
    const double se = std::sqrt(reps * 0.25);
    CHECK(std::abs(first_wins - reps / 2.0) < 5 * se);
}
