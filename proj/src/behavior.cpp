#include "mbcsim/behavior.hpp"

#include <algorithm>
#include <numeric>

namespace mbcsim {

namespace {

bool is_controversial(const BehaviorProfile::Controversy& c, int proposal) {
    for (int p : c.proposals)
        if (p == proposal) return true;
    return false;
}

void perceive_into(int reviewer, std::span<const int32_t> pile, const BehaviorProfile& profile,
                   Rng& noise, Rng& signs, std::vector<double>& out) {
    const auto& me = profile.reviewers[static_cast<size_t>(reviewer)];
    const auto& ctrl = profile.controversy;
    out.resize(pile.size());
    for (size_t s = 0; s < pile.size(); ++s) {
        // one noise draw per slot regardless of sigma keeps paired legs aligned
        const double z = noise.normal();
        double value = static_cast<double>(merit_of(pile[s]));
        if (ctrl.enabled() && is_controversial(ctrl, pile[s])) {
            const double sign = signs.uniform() < ctrl.plus_probability ? 1.0 : -1.0;
            value += ctrl.sigma * z + sign * ctrl.delta_mu;
        } else {
            value += me.sigma * z;
        }
        out[s] = value;
    }
}

// Slots sorted by perceived value, best first; exact ties shuffled uniformly.
void order_slots(std::span<const double> value, Rng& ties, std::vector<int32_t>& order) {
    order.resize(value.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int32_t a, int32_t b) { return value[a] > value[b]; });
    size_t run = 0;
    while (run < order.size()) {
        size_t end = run + 1;
        while (end < order.size() && value[order[end]] == value[order[run]]) ++end;
        if (end - run > 1) ties.shuffle(std::span<int32_t>(order.data() + run, end - run));
        run = end;
    }
}

int find_slot(std::span<const int32_t> pile, int proposal) {
    for (size_t s = 0; s < pile.size(); ++s)
        if (pile[s] == proposal) return static_cast<int>(s);
    return -1;
}

void scores_from_order(std::span<const int32_t> order, BehaviorProfile::Strategy strategy,
                       int ally_slot, std::vector<int32_t>& out) {
    const int m = static_cast<int>(order.size());
    out.resize(order.size());
    switch (strategy) {
        case BehaviorProfile::Strategy::honest:
            for (int k = 0; k < m; ++k) out[order[k]] = m - 1 - k;
            break;
        case BehaviorProfile::Strategy::reverse_ranking:
            for (int k = 0; k < m; ++k) out[order[k]] = k;
            break;
        case BehaviorProfile::Strategy::one_sided_favor: {
            out[ally_slot] = m - 1;
            int next = 0;  // best of the rest gets 0
            for (int k = 0; k < m; ++k)
                if (order[k] != ally_slot) out[order[k]] = next++;
            break;
        }
        case BehaviorProfile::Strategy::reciprocal_favor: {
            out[ally_slot] = m - 1;
            int next = m - 2;  // rest keep their honest relative order
            for (int k = 0; k < m; ++k)
                if (order[k] != ally_slot) out[order[k]] = next--;
            break;
        }
    }
}

void rank_into(const Perception& p, BehaviorProfile::Strategy strategy,
               std::span<const int32_t> pile, int ally, Rng& ties, std::vector<int32_t>& order,
               std::vector<int32_t>& out) {
    order_slots(p.value, ties, order);
    int ally_slot = -1;
    if (strategy == BehaviorProfile::Strategy::one_sided_favor ||
        strategy == BehaviorProfile::Strategy::reciprocal_favor) {
        ally_slot = find_slot(pile, ally);
        if (ally_slot < 0) strategy = BehaviorProfile::Strategy::honest;
    }
    scores_from_order(order, strategy, ally_slot, out);
}

}  // namespace

Perception perceive(int reviewer, std::span<const int32_t> pile, const BehaviorProfile& profile,
                    Rng& noise, Rng& signs) {
    Perception p;
    perceive_into(reviewer, pile, profile, noise, signs, p.value);
    return p;
}

std::vector<int32_t> rank_honest(const Perception& p, Rng& ties) {
    std::vector<int32_t> order, out;
    rank_into(p, BehaviorProfile::Strategy::honest, {}, -1, ties, order, out);
    return out;
}

std::vector<int32_t> rank_reverse(const Perception& p, Rng& ties) {
    std::vector<int32_t> order, out;
    rank_into(p, BehaviorProfile::Strategy::reverse_ranking, {}, -1, ties, order, out);
    return out;
}

std::vector<int32_t> rank_one_sided_favor(const Perception& p, std::span<const int32_t> pile,
                                          int ally, Rng& ties) {
    std::vector<int32_t> order, out;
    rank_into(p, BehaviorProfile::Strategy::one_sided_favor, pile, ally, ties, order, out);
    return out;
}

std::vector<int32_t> rank_reciprocal_favor(const Perception& p, std::span<const int32_t> pile,
                                           int ally, Rng& ties) {
    std::vector<int32_t> order, out;
    rank_into(p, BehaviorProfile::Strategy::reciprocal_favor, pile, ally, ties, order, out);
    return out;
}

ReviewRound submit_round(const GroupConfig& cfg, const Assignment& a,
                         const BehaviorProfile& profile, Rng& noise, Rng& signs, Rng& ties) {
    const int n = cfg.n_proposals;
    const int m = cfg.reviews_per_pi;
    std::vector<int32_t> borda(static_cast<size_t>(n) * m);
    Perception p;
    std::vector<int32_t> order, scores;
    for (int i = 0; i < n; ++i) {
        const auto pile = a.pile(i);
        const auto& r = profile.reviewers[static_cast<size_t>(i)];
        perceive_into(i, pile, profile, noise, signs, p.value);
        rank_into(p, r.strategy, pile, r.ally, ties, order, scores);
        std::copy(scores.begin(), scores.end(), borda.begin() + static_cast<size_t>(i) * m);
    }
    return ReviewRound(a, std::move(borda));
}

}  // namespace mbcsim
