#pragma once

#include "mbcsim/model.hpp"
#include "mbcsim/rng.hpp"

namespace mbcsim {

// MBC_i = (sum of the m Borda scores given to proposal i) / (m(m-1)).
// For m = 1 every score is 0 and the MBC is defined as 0.
std::vector<double> compute_mbc(const ReviewRound& round, const Assignment& a,
                                const GroupConfig& cfg);

struct GlobalRanking {
    std::vector<int32_t> order;  // proposal ids, best first
    std::vector<int32_t> rank;   // rank[id] = 0-based position in `order`
};

// Descending MBC; ties resolved uniformly at random. The priority overload
// resolves ties by the given strict priority instead (tests enumerate tie
// outcomes through it; a uniformly shuffled priority is what `ties` does).
GlobalRanking global_ranking(std::span<const double> mbc, Rng& ties);
GlobalRanking global_ranking(std::span<const double> mbc, std::span<const int32_t> priority);

// Q_i: sum over the pile of |submitted 0-based rank - 0-based rank within
// the pile's restriction of the global list|.
int quality_measure(int reviewer, const ReviewRound& round, const Assignment& a,
                    const GlobalRanking& ranking);

// Q of a fully reversed m-list: floor(m^2 / 2). This is the maximum over
// all submitted orders.
int q_max(int m);

struct BonusOutcome {
    double spacing = 0.0;       // a = (MBC_max - MBC_min) / N
    std::vector<double> value;  // B_i = 2a (Q_max - Q_i) / Q_max
    bool degenerate = false;    // MBC_max == MBC_min: a = 0, all bonuses 0
};

BonusOutcome bonus(std::span<const int> quality, std::span<const double> mbc,
                   const GroupConfig& cfg);

// r-hat: MBC + B when bonuses are enabled, plain MBC otherwise.
std::vector<double> final_scores(std::span<const double> mbc, const BonusOutcome& b,
                                 const GroupConfig& cfg);

// Top T = ceil(rate*N) by final score; ties at the cutoff uniform at random
// (priority overload as in global_ranking).
std::vector<uint8_t> fund(std::span<const double> final_score, const GroupConfig& cfg, Rng& ties);
std::vector<uint8_t> fund(std::span<const double> final_score, const GroupConfig& cfg,
                          std::span<const int32_t> priority);

}  // namespace mbcsim
