#include "mbcsim/assignment.hpp"

#include <vector>

namespace mbcsim {

namespace {

constexpr int kRoundRetries = 16;
constexpr int kRepairAttemptsPerSlot = 512;
constexpr int kRepairRestarts = 8;
constexpr int kMixSweepFactor = 8;
constexpr long kConditionRetries = 1 << 22;

// Builds one assignment as m rounds of fixed-point-free permutations, with
// swap repair once rejection stops paying off, then runs a randomized
// 2-swap walk over the valid-assignment space. Every choice below is
// uniform over positions/partners, so the sampler commutes with relabeling
// PIs (exchangeability); the mixing walk removes the residual structural
// bias the round construction carries on tiny groups.
class Sampler {
public:
    Sampler(const GroupConfig& cfg, Rng& rng)
        : n_(cfg.n_proposals),
          m_(cfg.reviews_per_pi),
          mutual_ok_(cfg.mutual_review_allowed),
          rng_(rng),
          has_(static_cast<size_t>(n_) * n_, 0),
          piles_(static_cast<size_t>(n_) * m_, -1),
          perm_(static_cast<size_t>(n_)) {}

    Assignment run() {
        for (int round = 0; round < m_; ++round) {
            sample_round();
            commit_round(round);
        }
        mix();
        return Assignment(n_, m_, std::move(piles_));
    }

private:
    bool position_ok(int i) const {
        const int v = perm_[static_cast<size_t>(i)];
        if (v == i) return false;
        if (has_[idx(i, v)]) return false;
        if (!mutual_ok_) {
            if (has_[idx(v, i)]) return false;         // v already reviews i
            if (perm_[static_cast<size_t>(v)] == i) return false;  // 2-cycle in this round
        }
        return true;
    }

    bool round_valid() const {
        for (int i = 0; i < n_; ++i)
            if (!position_ok(i)) return false;
        return true;
    }

    void sample_round() {
        for (int t = 0; t < kRoundRetries; ++t) {
            for (int i = 0; i < n_; ++i) perm_[static_cast<size_t>(i)] = i;
            rng_.shuffle(std::span<int>(perm_));
            if (round_valid()) return;
        }
        // repair the last rejected permutation; restart from a fresh shuffle
        // if the walk loiters on a plateau
        for (int cycle = 0; cycle < kRepairRestarts; ++cycle) {
            if (repair()) return;
            for (int i = 0; i < n_; ++i) perm_[static_cast<size_t>(i)] = i;
            rng_.shuffle(std::span<int>(perm_));
        }
        throw SamplingExhausted(
            "assignment sampling failed: no valid review round reachable "
            "within the repair budget (N=" +
            std::to_string(n_) + ", m=" + std::to_string(m_) +
            (mutual_ok_ ? "" : ", mutual pairs forbidden") + ")");
    }

    void collect_violations() {
        violations_.clear();
        for (int i = 0; i < n_; ++i)
            if (!position_ok(i)) violations_.push_back(i);
    }

    // Random swap walk accepting any move that does not add violations.
    // Sideways moves are needed: with tight constraints (m close to N-1, or
    // tiny groups) the nearest valid permutation can sit behind a plateau.
    bool repair() {
        collect_violations();
        long budget = static_cast<long>(kRepairAttemptsPerSlot) * n_;
        while (!violations_.empty()) {
            if (budget-- <= 0) return false;
            const int i = violations_[rng_.below(violations_.size())];
            const int j = static_cast<int>(rng_.below(static_cast<uint64_t>(n_)));
            if (j == i) continue;
            const size_t before = violations_.size();
            std::swap(perm_[static_cast<size_t>(i)], perm_[static_cast<size_t>(j)]);
            collect_violations();
            if (violations_.size() > before) {
                std::swap(perm_[static_cast<size_t>(i)], perm_[static_cast<size_t>(j)]);
                collect_violations();
            }
        }
        return true;
    }

    void commit_round(int round) {
        for (int i = 0; i < n_; ++i) {
            const int v = perm_[static_cast<size_t>(i)];
            has_[idx(i, v)] = 1;
            piles_[static_cast<size_t>(i) * m_ + round] = v;
        }
    }

    void mix() {
        const long steps = static_cast<long>(kMixSweepFactor) * n_ * m_;
        for (long step = 0; step < steps; ++step) {
            const int u = static_cast<int>(rng_.below(static_cast<uint64_t>(n_)));
            const int v = static_cast<int>(rng_.below(static_cast<uint64_t>(n_)));
            if (u == v) continue;
            const int su = static_cast<int>(rng_.below(static_cast<uint64_t>(m_)));
            const int sv = static_cast<int>(rng_.below(static_cast<uint64_t>(m_)));
            const int32_t x = piles_[static_cast<size_t>(u) * m_ + su];
            const int32_t y = piles_[static_cast<size_t>(v) * m_ + sv];
            if (x == y) continue;
            if (y == u || x == v) continue;              // would create self-review
            if (has_[idx(u, y)] || has_[idx(v, x)]) continue;  // duplicate in pile
            if (!mutual_ok_ && (has_[idx(y, u)] || has_[idx(x, v)])) continue;
            has_[idx(u, x)] = 0;
            has_[idx(u, y)] = 1;
            has_[idx(v, y)] = 0;
            has_[idx(v, x)] = 1;
            piles_[static_cast<size_t>(u) * m_ + su] = y;
            piles_[static_cast<size_t>(v) * m_ + sv] = x;
        }
    }

    size_t idx(int reviewer, int proposal) const {
        return static_cast<size_t>(reviewer) * n_ + proposal;
    }

    int n_, m_;
    bool mutual_ok_;
    Rng& rng_;
    std::vector<uint8_t> has_;
    std::vector<int32_t> piles_;
    std::vector<int> perm_;
    std::vector<int> violations_;
};

}  // namespace

Assignment sample_assignment(const GroupConfig& cfg, Rng& rng) {
    return Sampler(cfg, rng).run();
}

Assignment sample_assignment_conditioned(const GroupConfig& cfg, Rng& rng, int reviewer,
                                         int proposal) {
    if (reviewer == proposal)
        throw ConfigError("cannot condition on a self-review (reviewer == proposal)");
    if (reviewer < 0 || reviewer >= cfg.n_proposals || proposal < 0 ||
        proposal >= cfg.n_proposals)
        throw ConfigError("review condition out of range");
    for (long t = 0; t < kConditionRetries; ++t) {
        Assignment a = sample_assignment(cfg, rng);
        if (a.reviews(reviewer, proposal)) return a;
    }
    throw SamplingExhausted("conditioned assignment sampling exhausted its retry budget");
}

bool incidence_check(const Assignment& a, const GroupConfig& cfg) {
    if (a.n() != cfg.n_proposals || a.m() != cfg.reviews_per_pi) return false;
    std::vector<int> column(static_cast<size_t>(a.n()), 0);
    for (int i = 0; i < a.n(); ++i) {
        const auto pile = a.pile(i);
        int32_t prev = -1;
        for (int32_t p : pile) {
            if (p < 0 || p >= a.n() || p == i || p == prev) return false;
            prev = p;  // piles are stored sorted
            ++column[static_cast<size_t>(p)];
        }
    }
    for (int j = 0; j < a.n(); ++j)
        if (column[static_cast<size_t>(j)] != a.m()) return false;
    if (!cfg.mutual_review_allowed) {
        for (int i = 0; i < a.n(); ++i)
            for (int32_t p : a.pile(i))
                if (a.reviews(p, i)) return false;
    }
    return true;
}

}  // namespace mbcsim
