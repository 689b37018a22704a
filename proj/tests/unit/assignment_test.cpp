#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "mbcsim/assignment.hpp"

using namespace mbcsim;

namespace {

GroupConfig make(int n, int m, bool mutual = true) {
    GroupConfig cfg;
    cfg.n_proposals = n;
    cfg.reviews_per_pi = m;
    cfg.acceptance_rate = 0.15;
    cfg.mutual_review_allowed = mutual;
    return cfg;
}

// All 1-regular assignments on n PIs (permutation piles), with optional
// mutual-pair filtering; the independent oracle for the tiny cases.
std::vector<std::vector<int>> all_one_regular(int n, bool allow_mutual) {
    std::vector<int> perm(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<size_t>(i)] = i;
    std::sort(perm.begin(), perm.end());
    std::vector<std::vector<int>> out;
    do {
        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
            if (perm[static_cast<size_t>(i)] == i) ok = false;
            if (!allow_mutual && perm[static_cast<size_t>(perm[static_cast<size_t>(i)])] == i)
                ok = false;
        }
        if (ok) out.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

std::vector<int> pile_map(const Assignment& a) {
    std::vector<int> f(static_cast<size_t>(a.n()));
    for (int i = 0; i < a.n(); ++i) f[static_cast<size_t>(i)] = a.pile(i)[0];
    return f;
}

}  // namespace

TEST_CASE("desk-scale assignments are regular with no self-review") {
    const GroupConfig cfg = make(25, 7);
    Rng rng(41);
    for (int t = 0; t < 50; ++t) {
        const Assignment a = sample_assignment(cfg, rng);
        CHECK(incidence_check(a, cfg));
        for (int i = 0; i < 25; ++i) {
            CHECK(a.pile(i).size() == 7);
            CHECK_FALSE(a.reviews(i, i));
            CHECK(a.reviewers_of(i).size() == 7);
        }
    }
}

TEST_CASE("N=2 m=1 has a single forced assignment") {
    const GroupConfig cfg = make(2, 1);
    Rng rng(7);
    const Assignment a = sample_assignment(cfg, rng);
    CHECK(a.pile(0)[0] == 1);
    CHECK(a.pile(1)[0] == 0);
}

TEST_CASE("N=2 m=1 with mutual pairs forbidden is unsatisfiable") {
    const GroupConfig cfg = make(2, 1, false);
    Rng rng(7);
    CHECK_THROWS_AS(sample_assignment(cfg, rng), SamplingExhausted);
}

TEST_CASE("N=4 m=1 without mutual pairs yields only full cycles") {
    const auto legal = all_one_regular(4, false);
    CHECK(legal.size() == 6);  // derangements of 4 minus the three 2+2 involutions

    const GroupConfig cfg = make(4, 1, false);
    Rng rng(11);
    for (int t = 0; t < 200; ++t) {
        const Assignment a = sample_assignment(cfg, rng);
        CHECK(incidence_check(a, cfg));
        CHECK(std::count(legal.begin(), legal.end(), pile_map(a)) == 1);
    }
}

TEST_CASE("N=4 m=1 sampling is uniform over the nine derangements") {
    const auto legal = all_one_regular(4, true);
    CHECK(legal.size() == 9);

    const GroupConfig cfg = make(4, 1);
    Rng rng(13);
    std::map<std::vector<int>, int> counts;
    const int reps = 10000;
    for (int t = 0; t < reps; ++t) counts[pile_map(sample_assignment(cfg, rng))]++;

    CHECK(counts.size() == 9);
    const double expected = reps / 9.0;
    const double se = std::sqrt(reps * (1.0 / 9) * (8.0 / 9));
    for (const auto& [perm, count] : counts) {
        CHECK(std::count(legal.begin(), legal.end(), perm) == 1);
        CHECK(std::abs(count - expected) < 5 * se);
    }
}

TEST_CASE("pile membership is exchangeable across proposals") {
    // frequency of j in reviewer 0's pile must be m/(N-1) for every j != 0
    const GroupConfig cfg = make(25, 7);
    Rng rng(17);
    const int reps = 20000;
    std::vector<int> hits(25, 0);
    for (int t = 0; t < reps; ++t) {
        const Assignment a = sample_assignment(cfg, rng);
        for (int32_t p : a.pile(0)) ++hits[static_cast<size_t>(p)];
    }
    const double p = 7.0 / 24.0;
    const double se = std::sqrt(p * (1 - p) / reps);
    CHECK(hits[0] == 0);
    for (int j = 1; j < 25; ++j)
        CHECK(std::abs(hits[static_cast<size_t>(j)] / static_cast<double>(reps) - p) < 5 * se);
}

TEST_CASE("N=4 m=2 sampling matches the uniform assignment law") {
    // The pile structure is determined by the complement derangement
    // f(i) = the non-self proposal missing from A_i; uniformity over the
    // nine assignments means P(f is an involution) = 1/3.
    const GroupConfig cfg = make(4, 2);
    Rng rng(19);
    const int reps = 40000;
    int involutions = 0;
    for (int t = 0; t < reps; ++t) {
        const Assignment a = sample_assignment(cfg, rng);
        int f[4] = {0, 0, 0, 0};
        for (int i = 0; i < 4; ++i) {
            bool present[4] = {false, false, false, false};
            for (int32_t p : a.pile(i)) present[p] = true;
            for (int j = 0; j < 4; ++j)
                if (j != i && !present[j]) f[i] = j;
        }
        bool inv = true;
        for (int i = 0; i < 4; ++i) inv &= f[f[i]] == i;
        involutions += inv;
    }
    const double freq = involutions / static_cast<double>(reps);
    const double se = std::sqrt((1.0 / 3) * (2.0 / 3) / reps);
    CHECK(std::abs(freq - 1.0 / 3) < 5 * se);
}

TEST_CASE("mutual-pair prohibition holds at desk scale") {
    const GroupConfig cfg = make(25, 7, false);
    Rng rng(23);
    for (int t = 0; t < 30; ++t) {
        const Assignment a = sample_assignment(cfg, rng);
        CHECK(incidence_check(a, cfg));
        for (int i = 0; i < 25; ++i)
            for (int32_t p : a.pile(i)) CHECK_FALSE(a.reviews(p, i));
    }
}

TEST_CASE("incidence_check flags self-review and mutual pairs") {
    const GroupConfig cfg = make(3, 2);
    const Assignment complete(3, 2, {1, 2, 0, 2, 0, 1});
    CHECK(incidence_check(complete, cfg));

    const Assignment selfish(4, 1, {0, 2, 3, 1});  // reviewer 0 reviews itself
    CHECK_FALSE(incidence_check(selfish, make(4, 1)));

    GroupConfig no_mutual = make(3, 2, false);
    CHECK_FALSE(incidence_check(complete, no_mutual));  // N=3 m=2 is all mutual pairs

    GroupConfig other = make(4, 2);
    CHECK_FALSE(incidence_check(complete, other));  // wrong group size
}

TEST_CASE("conditioned sampling forces the reviewer-proposal edge") {
    const GroupConfig cfg = make(25, 7);
    Rng rng(29);
    for (int t = 0; t < 200; ++t) {
        const Assignment a = sample_assignment_conditioned(cfg, rng, 17, 19);
        CHECK(a.reviews(17, 19));
        CHECK(incidence_check(a, cfg));
    }
    CHECK_THROWS_AS(sample_assignment_conditioned(cfg, rng, 4, 4), ConfigError);
}

TEST_CASE("the conditioning event has unconditional probability m/(N-1)") {
    const GroupConfig cfg = make(25, 7);
    Rng rng(31);
    const int reps = 20000;
    int hits = 0;
    for (int t = 0; t < reps; ++t) hits += sample_assignment(cfg, rng).reviews(17, 19);
    const double p = 7.0 / 24.0;
    const double se = std::sqrt(p * (1 - p) / reps);
    CHECK(std::abs(hits / static_cast<double>(reps) - p) < 5 * se);
}
