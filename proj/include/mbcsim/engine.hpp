#pragma once

#include <optional>

#include "mbcsim/model.hpp"
#include "mbcsim/rng.hpp"

namespace mbcsim {

// Condition "reviewer holds proposal in its pile", i.e. reviewer ∈ R_proposal.
struct ReviewCondition {
    int reviewer = -1;  // 0-based ids
    int proposal = -1;
    friend bool operator==(const ReviewCondition&, const ReviewCondition&) = default;
};

struct ExperimentOptions {
    uint64_t replications = 100000;
    uint64_t seed = 123456789;
    int workers = 0;  // 0: MBCSIM_WORKERS env var, else hardware concurrency
    uint64_t stream_salt = 0;
    bool collect_mbc = false;
    std::string label;
};

struct MbcStats {
    std::vector<double> mean;
    std::vector<double> std_error;
};

struct ExperimentResult {
    FundingStats funding;
    MbcStats mbc;  // filled when collect_mbc was set
    uint64_t degenerate_replications = 0;
};

// One scenario leg of a comparison: mechanism config + reviewer behavior
// (+ optional conditioning). Legs of one delta experiment must agree on
// N, m, acceptance rate and the mutual-review rule; the bonus switch may
// differ (that comparison is itself an experiment of interest).
struct Leg {
    GroupConfig cfg;
    BehaviorProfile profile;
    std::optional<ReviewCondition> condition;
    std::string label;
};

struct DeltaResult {
    FundingStats base, variant;
    std::vector<double> delta;      // variant - base funding probability
    std::vector<double> std_error;  // paired: from per-replication discordance
    bool paired = true;
};

struct AccuracyPoint {
    int m = 0;
    double top_set_accuracy = 0.0;  // P(selected top-T set == true top-T set)
    double top_set_std_error = 0.0;
    double kendall_tau = 0.0;  // mean normalized Kendall distance, MBC list vs merit
};

struct AccuracyResult {
    std::string label;
    uint64_t replications = 0;
    std::vector<AccuracyPoint> points;
};

// One full pipeline pass; deterministic given (seed, replication, salt).
ScoreTable run_replication(const GroupConfig& cfg, const BehaviorProfile& profile, uint64_t seed,
                           uint64_t replication, uint64_t salt = 0,
                           const std::optional<ReviewCondition>& condition = {});

// Monte Carlo funding frequencies. Per-replication streams are derived from
// (seed, replication counter), so the result is identical for any worker
// count and schedule.
ExperimentResult run_experiment(const GroupConfig& cfg, const BehaviorProfile& profile,
                                const ExperimentOptions& opts,
                                const std::optional<ReviewCondition>& condition = {});

// Statistics over replications satisfying the condition (implemented by
// resampling assignments until the condition holds, which is the exact
// conditional law).
ExperimentResult conditional_experiment(const GroupConfig& cfg, const BehaviorProfile& profile,
                                        const ReviewCondition& condition,
                                        const ExperimentOptions& opts);

// Variant-minus-base funding probabilities. Paired mode replays the same
// assignment and perception draws in both legs (common random numbers);
// with identical legs the deltas are exactly zero.
DeltaResult delta_experiment(const Leg& base, const Leg& variant, const ExperimentOptions& opts,
                             bool paired = true);

// For each m: probability that the selected top-T set equals the true
// top-T merit set, and the mean normalized Kendall-tau distance between the
// MBC global list and the merit order.
AccuracyResult ranking_accuracy(const GroupConfig& cfg, std::span<const int> m_values,
                                const ExperimentOptions& opts);

int resolve_workers(int requested);

}  // namespace mbcsim
