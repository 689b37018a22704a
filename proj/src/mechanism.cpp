#include "mbcsim/mechanism.hpp"

#include <algorithm>
#include <numeric>

namespace mbcsim {

namespace {

GlobalRanking rank_by(std::span<const double> key, std::span<const int32_t> priority) {
    GlobalRanking g;
    g.order.resize(key.size());
    std::iota(g.order.begin(), g.order.end(), 0);
    std::sort(g.order.begin(), g.order.end(), [&](int32_t a, int32_t b) {
        if (key[a] != key[b]) return key[a] > key[b];
        return priority[a] < priority[b];
    });
    g.rank.resize(key.size());
    for (size_t pos = 0; pos < g.order.size(); ++pos)
        g.rank[static_cast<size_t>(g.order[pos])] = static_cast<int32_t>(pos);
    return g;
}

std::vector<int32_t> shuffled_priority(size_t n, Rng& ties) {
    std::vector<int32_t> priority(n);
    std::iota(priority.begin(), priority.end(), 0);
    ties.shuffle(std::span<int32_t>(priority));
    return priority;
}

}  // namespace

std::vector<double> compute_mbc(const ReviewRound& round, const Assignment& a,
                                const GroupConfig& cfg) {
    const int n = cfg.n_proposals;
    const int m = cfg.reviews_per_pi;
    std::vector<int> total(static_cast<size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        const auto pile = a.pile(i);
        const auto scores = round.scores(i);
        for (int s = 0; s < m; ++s) total[static_cast<size_t>(pile[s])] += scores[s];
    }
    std::vector<double> mbc(static_cast<size_t>(n), 0.0);
    if (m >= 2) {
        const double denom = static_cast<double>(m) * (m - 1);
        for (int j = 0; j < n; ++j) mbc[static_cast<size_t>(j)] = total[static_cast<size_t>(j)] / denom;
    }
    return mbc;
}

GlobalRanking global_ranking(std::span<const double> mbc, Rng& ties) {
    return rank_by(mbc, shuffled_priority(mbc.size(), ties));
}

GlobalRanking global_ranking(std::span<const double> mbc, std::span<const int32_t> priority) {
    return rank_by(mbc, priority);
}

int quality_measure(int reviewer, const ReviewRound& round, const Assignment& a,
                    const GlobalRanking& ranking) {
    const auto pile = a.pile(reviewer);
    const auto scores = round.scores(reviewer);
    const int m = static_cast<int>(pile.size());
    int q = 0;
    for (int s = 0; s < m; ++s) {
        const int submitted_pos = m - 1 - scores[s];
        // position of pile[s] within the global list restricted to the pile
        int restricted_pos = 0;
        const int32_t my_rank = ranking.rank[static_cast<size_t>(pile[s])];
        for (int t = 0; t < m; ++t)
            if (ranking.rank[static_cast<size_t>(pile[t])] < my_rank) ++restricted_pos;
        q += std::abs(submitted_pos - restricted_pos);
    }
    return q;
}

int q_max(int m) { return (m * m) / 2; }

BonusOutcome bonus(std::span<const int> quality, std::span<const double> mbc,
                   const GroupConfig& cfg) {
    BonusOutcome out;
    out.value.assign(mbc.size(), 0.0);
    const auto [mn, mx] = std::minmax_element(mbc.begin(), mbc.end());
    out.degenerate = (*mx == *mn);
    if (out.degenerate) return out;
    out.spacing = (*mx - *mn) / static_cast<double>(cfg.n_proposals);
    const int qm = q_max(cfg.reviews_per_pi);
    if (qm == 0) return out;  // m == 1: every submitted order trivially agrees
    for (size_t i = 0; i < quality.size(); ++i)
        out.value[i] = 2.0 * out.spacing * static_cast<double>(qm - quality[i]) / qm;
    return out;
}

std::vector<double> final_scores(std::span<const double> mbc, const BonusOutcome& b,
                                 const GroupConfig& cfg) {
    std::vector<double> r(mbc.begin(), mbc.end());
    if (cfg.bonus_enabled)
        for (size_t i = 0; i < r.size(); ++i) r[i] += b.value[i];
    return r;
}

namespace {

std::vector<uint8_t> fund_by(std::span<const double> final_score, const GroupConfig& cfg,
                             std::span<const int32_t> priority) {
    const auto g = rank_by(final_score, priority);
    std::vector<uint8_t> funded(final_score.size(), 0);
    const int t = cfg.funded_slots();
    for (int pos = 0; pos < t; ++pos) funded[static_cast<size_t>(g.order[pos])] = 1;
    return funded;
}

}  // namespace

std::vector<uint8_t> fund(std::span<const double> final_score, const GroupConfig& cfg, Rng& ties) {
    return fund_by(final_score, cfg, shuffled_priority(final_score.size(), ties));
}

std::vector<uint8_t> fund(std::span<const double> final_score, const GroupConfig& cfg,
                          std::span<const int32_t> priority) {
    return fund_by(final_score, cfg, priority);
}

}  // namespace mbcsim
