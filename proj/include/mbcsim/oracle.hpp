#pragma once

#include "mbcsim/model.hpp"

namespace mbcsim::oracle {

// Bonus regime assumed by the closed-form deviation utilities: none, the
// ideal 2/N every truthful PI expects, or the pessimistic regime where one
// reversed report degrades every honest PI's bonus by 1/N.
enum class BonusMode { none, ideal_2_over_n, degraded_1_over_n };

struct UtilityParams {
    int n = 25;                  // N
    int m = 7;                   // reviews per PI
    double p = 1.0;              // competitor-distance exponent, p > 0
    BonusMode bonus_mode = BonusMode::none;
    int dishonest_reviewers = 0; // e

    static UtilityParams from(const GroupConfig& cfg) {
        UtilityParams u;
        u.n = cfg.n_proposals;
        u.m = cfg.reviews_per_pi;
        u.p = cfg.utility_exponent;
        return u;
    }
};

// P(a random honest reviewer gives merit-i a Borda score of k):
// C(m-1,k) C(N-m,i-k-1) / C(N-1,i-1); zero outside the support.
double borda_pmf(int merit, int score, const UtilityParams& u);

// E[MBC_i] with e reverse-ranking reviewers among R_i:
// (1 - e/m)(i-1)/(N-1) + (e/m)(N-i)/(N-1).
double expected_mbc(int merit, int dishonest_reviewers, const UtilityParams& u);

// E[u_i] under all-truthful reporting: (1/(N-1)) sum_{j!=i} (i-j)/|i-j|^p.
double utility_truthful(int merit, const UtilityParams& u);

struct DeviationUtility {
    double truthful = 0.0;
    double correction = 0.0;  // gain/loss relative to truthful play
    double total = 0.0;
};

// Utility of the lone reverse-ranking deviator, no bonuses:
// correction = (2/(N-1)^2) sum_{j!=i} (j - (N+1)/2) / |i-j|^p,
// positive for high-merit deviators and negative for low-merit ones.
DeviationUtility utility_evil(int merit, const UtilityParams& u);

// Same deviation with quality bonuses under the degraded-1/N regime:
// correction = (1/(N-1)^2) sum_{j!=i} (3 - 1/N - 2j) / |i-j|^p,
// negative for every i.
DeviationUtility utility_evil_with_bonus(int merit, const UtilityParams& u);

// One-sided favor, conditioned on the colluder sitting in R_j:
// E[MBC_j] = (j-1)/(N-1) + (N-j)/(m(N-1)).
double expected_mbc_ally(int ally_merit, const UtilityParams& u);

// Shift applied to a bystander k != i, j by the colluder's reversed scores:
// -(1/(N-1)^2) (k - 1 - (m-2)/(m-1) (N-k)). Real-valued k so tests can
// evaluate the zero of the linear form directly.
double bystander_mbc_shift(double k_merit, const UtilityParams& u);

// E[MBC_k] = (k-1)/(N-1) + bystander_mbc_shift(k).
double expected_mbc_bystander(int k_merit, const UtilityParams& u);

struct AllyUtility {
    double baseline = 0.0;     // E[u_j] truthful
    double mbc_boost = 0.0;    // from the colluder's guaranteed m-1 score
    double rival_shift = 0.0;  // from rivals' decreased (or increased) MBC
    double total = 0.0;
};

struct ColluderUtility {
    double baseline = 0.0;        // E[u_i] truthful
    double reverse_effect = 0.0;  // own reversed scores move rivals
    double ally_boost_loss = 0.0; // ally's raised MBC counts against i (< 0)
    double bonus_loss = 0.0;      // -(expected bonus shortfall) spread over rivals
    double total = 0.0;
};

struct CollusionUtilities {
    AllyUtility ally;
    ColluderUtility colluder;
};

// Expected utilities for a one-sided favor from colluder i to ally j, both
// decomposed into labeled terms. `expected_bonus_shortfall` is the assumed
// constant E[B_k - B_i] >= 0 of the colluder against everyone else; the
// default 0 matches the E[B_j - B_k] = 0 assumption used for the ally.
CollusionUtilities utility_collusion(int colluder_merit, int ally_merit, const UtilityParams& u,
                                     double expected_bonus_shortfall = 0.0);

}  // namespace mbcsim::oracle
