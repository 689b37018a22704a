#include "mbcsim/model.hpp"

#include <algorithm>

namespace mbcsim {

namespace {

std::string describe(const char* what, long value) {
    return std::string(what) + " (got " + std::to_string(value) + ")";
}

}  // namespace

void validate_config(const GroupConfig& cfg) {
    if (cfg.n_proposals < 2)
        throw ConfigError(describe("n_proposals must be at least 2", cfg.n_proposals));
    if (cfg.reviews_per_pi < 1 || cfg.reviews_per_pi > cfg.n_proposals - 1)
        throw ConfigError("reviews_per_pi must satisfy 1 <= m <= N-1 (got m=" +
                          std::to_string(cfg.reviews_per_pi) +
                          ", N=" + std::to_string(cfg.n_proposals) + ")");
    if (!(cfg.acceptance_rate > 0.0) || !(cfg.acceptance_rate < 1.0))
        throw ConfigError("acceptance_rate must lie strictly between 0 and 1 (got " +
                          std::to_string(cfg.acceptance_rate) + ")");
    if (!(cfg.utility_exponent > 0.0))
        throw ConfigError("utility_exponent must be positive (got " +
                          std::to_string(cfg.utility_exponent) + ")");
}

Assignment::Assignment(int n, int m, std::vector<int32_t> piles)
    : n_(n), m_(m), piles_(std::move(piles)) {
    if (piles_.size() != static_cast<size_t>(n_) * m_)
        throw std::logic_error("assignment pile table has wrong size");

    std::vector<int> column(static_cast<size_t>(n_), 0);
    for (int i = 0; i < n_; ++i) {
        auto row = piles_.begin() + static_cast<size_t>(i) * m_;
        std::sort(row, row + m_);
        for (int s = 0; s < m_; ++s) {
            const int32_t p = row[s];
            if (p < 0 || p >= n_) throw std::logic_error("assignment references unknown proposal");
            if (s > 0 && row[s] == row[s - 1])
                throw std::logic_error("assignment pile contains duplicates");
            ++column[static_cast<size_t>(p)];
        }
    }
    for (int j = 0; j < n_; ++j)
        if (column[static_cast<size_t>(j)] != m_)
            throw std::logic_error("assignment is not column-regular");

    reviewers_.assign(static_cast<size_t>(n_) * m_, 0);
    std::vector<int> fill(static_cast<size_t>(n_), 0);
    for (int i = 0; i < n_; ++i)
        for (int32_t p : pile(i))
            reviewers_[static_cast<size_t>(p) * m_ + fill[static_cast<size_t>(p)]++] = i;
    // reviewer ids are appended in increasing order already
}

ReviewRound::ReviewRound(const Assignment& a, std::vector<int32_t> borda)
    : n_(a.n()), m_(a.m()), borda_(std::move(borda)) {
    if (borda_.size() != static_cast<size_t>(n_) * m_)
        throw std::logic_error("review round has wrong size");
    uint64_t mask = 0;  // m <= 64 covered; larger groups use the slow path
    std::vector<uint8_t> seen;
    for (int i = 0; i < n_; ++i) {
        if (m_ <= 64) {
            mask = 0;
            for (int s = 0; s < m_; ++s) {
                const int32_t b = borda_[static_cast<size_t>(i) * m_ + s];
                if (b < 0 || b >= m_) throw std::logic_error("borda score out of range");
                mask |= uint64_t{1} << b;
            }
            if (mask != (m_ == 64 ? ~uint64_t{0} : (uint64_t{1} << m_) - 1))
                throw std::logic_error("borda scores are not a permutation of 0..m-1");
        } else {
            seen.assign(static_cast<size_t>(m_), 0);
            for (int s = 0; s < m_; ++s) {
                const int32_t b = borda_[static_cast<size_t>(i) * m_ + s];
                if (b < 0 || b >= m_ || seen[static_cast<size_t>(b)]++)
                    throw std::logic_error("borda scores are not a permutation of 0..m-1");
            }
        }
    }
}

void validate_profile(const GroupConfig& cfg, const BehaviorProfile& profile) {
    const int n = cfg.n_proposals;
    if (profile.reviewers.size() != static_cast<size_t>(n))
        throw ConfigError("behavior profile covers " + std::to_string(profile.reviewers.size()) +
                          " reviewers, group has " + std::to_string(n));
    for (int i = 0; i < n; ++i) {
        const auto& r = profile.reviewers[static_cast<size_t>(i)];
        if (r.sigma < 0.0) throw ConfigError("reviewer noise sigma must be nonnegative");
        const bool favor = r.strategy == BehaviorProfile::Strategy::one_sided_favor ||
                           r.strategy == BehaviorProfile::Strategy::reciprocal_favor;
        if (favor) {
            if (r.ally < 0 || r.ally >= n) throw ConfigError("favor ally out of range");
            if (r.ally == i) throw ConfigError("a PI cannot ally with itself");
        }
    }
    const auto& c = profile.controversy;
    if (c.enabled()) {
        if (c.delta_mu < 0.0) throw ConfigError("controversy delta_mu must be nonnegative");
        if (c.sigma < 0.0) throw ConfigError("controversy sigma must be nonnegative");
        if (c.plus_probability < 0.0 || c.plus_probability > 1.0)
            throw ConfigError("controversy sign probability must lie in [0,1]");
        for (int p : c.proposals)
            if (p < 0 || p >= n) throw ConfigError("controversial proposal index out of range");
    }
}

}  // namespace mbcsim
