#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mbcsim {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : ConfigError {
    using ConfigError::ConfigError;
};
struct SamplingExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Proposals (and the PIs that submit them) are 0-based ids internally;
// merit(id) = id + 1, so a larger id is an intrinsically better proposal.
// Everything user-facing (scenario files, CSV output) speaks 1-based merit.
constexpr int merit_of(int id) { return id + 1; }
constexpr int id_of_merit(int merit) { return merit - 1; }

struct GroupConfig {
    int n_proposals = 25;        // N
    int reviews_per_pi = 7;      // m
    double acceptance_rate = 0.15;
    double utility_exponent = 1.0;  // p
    bool bonus_enabled = true;
    bool mutual_review_allowed = true;
    uint64_t seed = 123456789;

    // T = ceil(rate * N). The epsilon guards exact products such as
    // 0.15 * 20 that land a hair above the integer in binary.
    int funded_slots() const {
        const double x = acceptance_rate * static_cast<double>(n_proposals);
        int t = static_cast<int>(std::ceil(x - 1e-9));
        if (t < 1) t = 1;
        if (t > n_proposals) t = n_proposals;
        return t;
    }
};

// Throws ConfigError naming the violated constraint.
void validate_config(const GroupConfig& cfg);

// m-regular review assignment. pile(i) is A_i, the m distinct proposals
// reviewer i holds (never i itself); reviewers_of(j) is the inverse map R_j.
class Assignment {
public:
    Assignment(int n, int m, std::vector<int32_t> piles);

    int n() const { return n_; }
    int m() const { return m_; }

    std::span<const int32_t> pile(int reviewer) const {
        return {piles_.data() + static_cast<size_t>(reviewer) * m_, static_cast<size_t>(m_)};
    }
    std::span<const int32_t> reviewers_of(int proposal) const {
        return {reviewers_.data() + static_cast<size_t>(proposal) * m_, static_cast<size_t>(m_)};
    }
    bool reviews(int reviewer, int proposal) const {
        for (int32_t p : pile(reviewer))
            if (p == proposal) return true;
        return false;
    }

private:
    int n_, m_;
    std::vector<int32_t> piles_;      // n*m, row per reviewer, each row sorted
    std::vector<int32_t> reviewers_;  // n*m, row per proposal, each row sorted
};

// One round of submitted reviews: per reviewer, a Borda score for each pile
// slot. Construction asserts the per-reviewer permutation invariant
// (scores are {0, ..., m-1} exactly once).
class ReviewRound {
public:
    ReviewRound(const Assignment& a, std::vector<int32_t> borda);

    int n() const { return n_; }
    int m() const { return m_; }
    int score(int reviewer, int slot) const {
        return borda_[static_cast<size_t>(reviewer) * m_ + slot];
    }
    std::span<const int32_t> scores(int reviewer) const {
        return {borda_.data() + static_cast<size_t>(reviewer) * m_, static_cast<size_t>(m_)};
    }

private:
    int n_, m_;
    std::vector<int32_t> borda_;
};

// Per-replication outcome of the full scoring pipeline.
struct ScoreTable {
    std::vector<double> mbc;          // per proposal, in [0,1]
    std::vector<int> quality;         // Q_i per reviewer
    int q_max = 0;
    double spacing = 0.0;             // a = (MBC_max - MBC_min) / N
    std::vector<double> bonus;        // B_i per reviewer, in [0, 2a]
    std::vector<double> final_score;  // r-hat per proposal
    std::vector<int32_t> global_rank; // 0-based position in the MBC list
    std::vector<uint8_t> funded;      // exactly T set
    bool degenerate_spread = false;   // MBC_max == MBC_min this replication
};

// Per-reviewer strategy plus an optional controversial-perception overlay.
// Noise is orthogonal to the ranking strategy: every reviewer perceives
// merit through its own sigma first, then the strategy turns the perception
// into a submitted ranking.
struct BehaviorProfile {
    enum class Strategy : uint8_t { honest, reverse_ranking, one_sided_favor, reciprocal_favor };

    struct Reviewer {
        Strategy strategy = Strategy::honest;
        int ally = -1;       // favor strategies only (0-based id)
        double sigma = 0.0;  // stddev of perception noise
    };

    struct Controversy {
        std::vector<int> proposals;  // 0-based ids
        double delta_mu = 0.0;
        double sigma = 0.0;
        double plus_probability = 0.5;
        bool enabled() const { return !proposals.empty(); }
    };

    std::vector<Reviewer> reviewers;
    Controversy controversy;

    static BehaviorProfile honest(int n) {
        BehaviorProfile p;
        p.reviewers.resize(static_cast<size_t>(n));
        return p;
    }
    BehaviorProfile& with_noise(double sigma) {
        for (auto& r : reviewers) r.sigma = sigma;
        return *this;
    }
    BehaviorProfile& with_noise(int reviewer, double sigma) {
        reviewers.at(static_cast<size_t>(reviewer)).sigma = sigma;
        return *this;
    }
    BehaviorProfile& with_reverse(int reviewer) {
        reviewers.at(static_cast<size_t>(reviewer)).strategy = Strategy::reverse_ranking;
        return *this;
    }
    BehaviorProfile& with_one_sided_favor(int reviewer, int ally) {
        auto& r = reviewers.at(static_cast<size_t>(reviewer));
        r.strategy = Strategy::one_sided_favor;
        r.ally = ally;
        return *this;
    }
    BehaviorProfile& with_reciprocal_favor(int a, int b) {
        auto& ra = reviewers.at(static_cast<size_t>(a));
        ra.strategy = Strategy::reciprocal_favor;
        ra.ally = b;
        auto& rb = reviewers.at(static_cast<size_t>(b));
        rb.strategy = Strategy::reciprocal_favor;
        rb.ally = a;
        return *this;
    }
    BehaviorProfile& with_controversial(std::vector<int> proposals, double delta_mu, double sigma,
                                        double plus_probability = 0.5) {
        controversy.proposals = std::move(proposals);
        controversy.delta_mu = delta_mu;
        controversy.sigma = sigma;
        controversy.plus_probability = plus_probability;
        return *this;
    }
};

// Throws ConfigError on self-allies, out-of-range indices or negative widths.
void validate_profile(const GroupConfig& cfg, const BehaviorProfile& profile);

// Funded frequencies aggregated over replications.
struct FundingStats {
    std::string scenario;
    uint64_t replications = 0;
    std::vector<uint64_t> funded_count;
    std::vector<double> funded_probability;
    std::vector<double> std_error;  // sqrt(p(1-p)/R)
};

}  // namespace mbcsim
