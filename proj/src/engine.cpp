#include "mbcsim/engine.hpp"

#include <cmath>
#include <cstdlib>
#include <thread>

#include "mbcsim/assignment.hpp"
#include "mbcsim/behavior.hpp"
#include "mbcsim/mechanism.hpp"

namespace mbcsim {

namespace {

void run_pipeline(const GroupConfig& cfg, const BehaviorProfile& profile, const Assignment& a,
                  ReplicationStreams& streams, ScoreTable& out) {
    const int n = cfg.n_proposals;
    const ReviewRound round =
        submit_round(cfg, a, profile, streams.noise, streams.signs, streams.ties);
    out.mbc = compute_mbc(round, a, cfg);
    GlobalRanking ranking = global_ranking(out.mbc, streams.ties);
    out.q_max = q_max(cfg.reviews_per_pi);
    out.quality.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        out.quality[static_cast<size_t>(i)] = quality_measure(i, round, a, ranking);
    BonusOutcome b = bonus(out.quality, out.mbc, cfg);
    out.spacing = b.spacing;
    out.degenerate_spread = b.degenerate;
    out.final_score = final_scores(out.mbc, b, cfg);
    out.bonus = std::move(b.value);
    out.funded = fund(out.final_score, cfg, streams.ties);
    out.global_rank = std::move(ranking.rank);
}

Assignment sample_for(const GroupConfig& cfg, const std::optional<ReviewCondition>& condition,
                      Rng& rng) {
    if (condition)
        return sample_assignment_conditioned(cfg, rng, condition->reviewer, condition->proposal);
    return sample_assignment(cfg, rng);
}

// Static block partition; per-replication streams make the result identical
// for every worker count, so accumulators only need to merge commutatively.
template <class Accum, class Body>
Accum run_blocks(uint64_t replications, int workers, const Accum& prototype, const Body& body) {
    const int w = std::max(1, std::min<int>(workers, static_cast<int>(
                                                         std::min<uint64_t>(replications, 1024))));
    if (w == 1) {
        Accum acc = prototype;
        for (uint64_t r = 0; r < replications; ++r) body(acc, r);
        return acc;
    }
    std::vector<Accum> accs(static_cast<size_t>(w), prototype);
    std::vector<std::exception_ptr> errors(static_cast<size_t>(w));
    std::vector<std::thread> threads;
    threads.reserve(static_cast<size_t>(w));
    for (int t = 0; t < w; ++t) {
        const uint64_t begin = replications * static_cast<uint64_t>(t) / w;
        const uint64_t end = replications * (static_cast<uint64_t>(t) + 1) / w;
        threads.emplace_back([&accs, &errors, &body, t, begin, end] {
            try {
                Accum& acc = accs[static_cast<size_t>(t)];
                for (uint64_t r = begin; r < end; ++r) body(acc, r);
            } catch (...) {
                errors[static_cast<size_t>(t)] = std::current_exception();
            }
        });
    }
    for (auto& th : threads) th.join();
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    Accum total = std::move(accs.front());
    for (int t = 1; t < w; ++t) total.merge(accs[static_cast<size_t>(t)]);
    return total;
}

double binomial_se(double p, uint64_t r) {
    return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(r));
}

FundingStats make_funding_stats(std::string label, uint64_t replications,
                                std::vector<uint64_t> counts) {
    FundingStats f;
    f.scenario = std::move(label);
    f.replications = replications;
    f.funded_count = std::move(counts);
    f.funded_probability.resize(f.funded_count.size());
    f.std_error.resize(f.funded_count.size());
    for (size_t i = 0; i < f.funded_count.size(); ++i) {
        const double p = static_cast<double>(f.funded_count[i]) / static_cast<double>(replications);
        f.funded_probability[i] = p;
        f.std_error[i] = binomial_se(p, replications);
    }
    return f;
}

struct FundAccum {
    std::vector<uint64_t> funded;
    std::vector<double> mbc_sum, mbc_sumsq;
    uint64_t degenerate = 0;
    ScoreTable table;

    explicit FundAccum(int n)
        : funded(static_cast<size_t>(n), 0),
          mbc_sum(static_cast<size_t>(n), 0.0),
          mbc_sumsq(static_cast<size_t>(n), 0.0) {}

    void merge(const FundAccum& o) {
        for (size_t i = 0; i < funded.size(); ++i) {
            funded[i] += o.funded[i];
            mbc_sum[i] += o.mbc_sum[i];
            mbc_sumsq[i] += o.mbc_sumsq[i];
        }
        degenerate += o.degenerate;
    }
};

struct DeltaAccum {
    std::vector<uint64_t> base, variant, gained, lost;
    ScoreTable table_b, table_v;

    explicit DeltaAccum(int n)
        : base(static_cast<size_t>(n), 0),
          variant(static_cast<size_t>(n), 0),
          gained(static_cast<size_t>(n), 0),
          lost(static_cast<size_t>(n), 0) {}

    void merge(const DeltaAccum& o) {
        for (size_t i = 0; i < base.size(); ++i) {
            base[i] += o.base[i];
            variant[i] += o.variant[i];
            gained[i] += o.gained[i];
            lost[i] += o.lost[i];
        }
    }
};

struct AccuracyAccum {
    uint64_t top_match = 0;
    uint64_t discordant = 0;
    ScoreTable table;

    explicit AccuracyAccum(int) {}
    void merge(const AccuracyAccum& o) {
        top_match += o.top_match;
        discordant += o.discordant;
    }
};

}  // namespace

int resolve_workers(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("MBCSIM_WORKERS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

ScoreTable run_replication(const GroupConfig& cfg, const BehaviorProfile& profile, uint64_t seed,
                           uint64_t replication, uint64_t salt,
                           const std::optional<ReviewCondition>& condition) {
    validate_config(cfg);
    validate_profile(cfg, profile);
    ReplicationStreams streams(seed, replication, salt);
    const Assignment a = sample_for(cfg, condition, streams.assignment);
    ScoreTable table;
    run_pipeline(cfg, profile, a, streams, table);
    return table;
}

ExperimentResult run_experiment(const GroupConfig& cfg, const BehaviorProfile& profile,
                                const ExperimentOptions& opts,
                                const std::optional<ReviewCondition>& condition) {
    validate_config(cfg);
    validate_profile(cfg, profile);
    const int n = cfg.n_proposals;
    const uint64_t reps = opts.replications;

    const auto body = [&](FundAccum& acc, uint64_t rep) {
        ReplicationStreams streams(opts.seed, rep, opts.stream_salt);
        const Assignment a = sample_for(cfg, condition, streams.assignment);
        run_pipeline(cfg, profile, a, streams, acc.table);
        for (int i = 0; i < n; ++i) acc.funded[static_cast<size_t>(i)] += acc.table.funded[static_cast<size_t>(i)];
        if (opts.collect_mbc) {
            for (int i = 0; i < n; ++i) {
                const double v = acc.table.mbc[static_cast<size_t>(i)];
                acc.mbc_sum[static_cast<size_t>(i)] += v;
                acc.mbc_sumsq[static_cast<size_t>(i)] += v * v;
            }
        }
        acc.degenerate += acc.table.degenerate_spread ? 1 : 0;
    };
    FundAccum total = run_blocks(reps, resolve_workers(opts.workers), FundAccum(n), body);

    ExperimentResult result;
    result.funding = make_funding_stats(opts.label, reps, std::move(total.funded));
    result.degenerate_replications = total.degenerate;
    if (opts.collect_mbc) {
        result.mbc.mean.resize(static_cast<size_t>(n));
        result.mbc.std_error.resize(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            const double mean = total.mbc_sum[static_cast<size_t>(i)] / static_cast<double>(reps);
            const double var =
                reps > 1 ? std::max(0.0, (total.mbc_sumsq[static_cast<size_t>(i)] -
                                          static_cast<double>(reps) * mean * mean) /
                                             static_cast<double>(reps - 1))
                         : 0.0;
            result.mbc.mean[static_cast<size_t>(i)] = mean;
            result.mbc.std_error[static_cast<size_t>(i)] =
                std::sqrt(var / static_cast<double>(reps));
        }
    }
    return result;
}

ExperimentResult conditional_experiment(const GroupConfig& cfg, const BehaviorProfile& profile,
                                        const ReviewCondition& condition,
                                        const ExperimentOptions& opts) {
    return run_experiment(cfg, profile, opts, condition);
}

DeltaResult delta_experiment(const Leg& base, const Leg& variant, const ExperimentOptions& opts,
                             bool paired) {
    validate_config(base.cfg);
    validate_config(variant.cfg);
    validate_profile(base.cfg, base.profile);
    validate_profile(variant.cfg, variant.profile);
    if (base.cfg.n_proposals != variant.cfg.n_proposals ||
        base.cfg.reviews_per_pi != variant.cfg.reviews_per_pi ||
        base.cfg.acceptance_rate != variant.cfg.acceptance_rate ||
        base.cfg.mutual_review_allowed != variant.cfg.mutual_review_allowed)
        throw ConfigError("delta legs must share N, m, acceptance rate and the mutual-review rule");
    if (paired && base.condition != variant.condition)
        throw ConfigError("paired delta legs must share the conditioning event");

    const int n = base.cfg.n_proposals;
    const uint64_t reps = opts.replications;

    const auto paired_body = [&](DeltaAccum& acc, uint64_t rep) {
        ReplicationStreams streams_b(opts.seed, rep, opts.stream_salt);
        ReplicationStreams streams_v(opts.seed, rep, opts.stream_salt);
        const Assignment a = sample_for(base.cfg, base.condition, streams_b.assignment);
        run_pipeline(base.cfg, base.profile, a, streams_b, acc.table_b);
        run_pipeline(variant.cfg, variant.profile, a, streams_v, acc.table_v);
        for (int i = 0; i < n; ++i) {
            const bool fb = acc.table_b.funded[static_cast<size_t>(i)] != 0;
            const bool fv = acc.table_v.funded[static_cast<size_t>(i)] != 0;
            acc.base[static_cast<size_t>(i)] += fb;
            acc.variant[static_cast<size_t>(i)] += fv;
            acc.gained[static_cast<size_t>(i)] += (!fb && fv);
            acc.lost[static_cast<size_t>(i)] += (fb && !fv);
        }
    };
    const auto unpaired_body = [&](DeltaAccum& acc, uint64_t rep) {
        ReplicationStreams streams_b(opts.seed, rep, opts.stream_salt + 1);
        ReplicationStreams streams_v(opts.seed, rep, opts.stream_salt + 2);
        const Assignment ab = sample_for(base.cfg, base.condition, streams_b.assignment);
        const Assignment av = sample_for(variant.cfg, variant.condition, streams_v.assignment);
        run_pipeline(base.cfg, base.profile, ab, streams_b, acc.table_b);
        run_pipeline(variant.cfg, variant.profile, av, streams_v, acc.table_v);
        for (int i = 0; i < n; ++i) {
            acc.base[static_cast<size_t>(i)] += acc.table_b.funded[static_cast<size_t>(i)];
            acc.variant[static_cast<size_t>(i)] += acc.table_v.funded[static_cast<size_t>(i)];
        }
    };

    DeltaAccum total(n);
    if (paired)
        total = run_blocks(reps, resolve_workers(opts.workers), DeltaAccum(n), paired_body);
    else
        total = run_blocks(reps, resolve_workers(opts.workers), DeltaAccum(n), unpaired_body);

    DeltaResult out;
    out.paired = paired;
    out.base = make_funding_stats(base.label, reps, std::move(total.base));
    out.variant = make_funding_stats(variant.label, reps, std::move(total.variant));
    out.delta.resize(static_cast<size_t>(n));
    out.std_error.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) {
        const size_t s = static_cast<size_t>(i);
        const double d = out.variant.funded_probability[s] - out.base.funded_probability[s];
        out.delta[s] = d;
        if (paired) {
            const double p_changed =
                static_cast<double>(total.gained[s] + total.lost[s]) / static_cast<double>(reps);
            out.std_error[s] =
                std::sqrt(std::max(0.0, p_changed - d * d) / static_cast<double>(reps));
        } else {
            const double se_b = out.base.std_error[s];
            const double se_v = out.variant.std_error[s];
            out.std_error[s] = std::sqrt(se_b * se_b + se_v * se_v);
        }
    }
    return out;
}

AccuracyResult ranking_accuracy(const GroupConfig& cfg, std::span<const int> m_values,
                                const ExperimentOptions& opts) {
    AccuracyResult result;
    result.label = opts.label;
    result.replications = opts.replications;
    const int n = cfg.n_proposals;
    const int t = cfg.funded_slots();
    const uint64_t pairs = static_cast<uint64_t>(n) * (n - 1) / 2;

    for (int m : m_values) {
        GroupConfig cfg_m = cfg;
        cfg_m.reviews_per_pi = m;
        validate_config(cfg_m);
        const BehaviorProfile profile = BehaviorProfile::honest(n);

        const auto body = [&](AccuracyAccum& acc, uint64_t rep) {
            ReplicationStreams streams(opts.seed, rep, opts.stream_salt);
            const Assignment a = sample_assignment(cfg_m, streams.assignment);
            run_pipeline(cfg_m, profile, a, streams, acc.table);
            bool match = true;
            for (int i = 0; i < n && match; ++i)
                match = (acc.table.funded[static_cast<size_t>(i)] != 0) == (i >= n - t);
            acc.top_match += match;
            // discordant pairs of the MBC list against the merit order
            const auto& rank = acc.table.global_rank;
            uint64_t disc = 0;
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    disc += rank[static_cast<size_t>(j)] > rank[static_cast<size_t>(i)];
            acc.discordant += disc;
        };
        AccuracyAccum total =
            run_blocks(opts.replications, resolve_workers(opts.workers), AccuracyAccum(n), body);

        AccuracyPoint point;
        point.m = m;
        point.top_set_accuracy =
            static_cast<double>(total.top_match) / static_cast<double>(opts.replications);
        point.top_set_std_error = binomial_se(point.top_set_accuracy, opts.replications);
        point.kendall_tau = static_cast<double>(total.discordant) /
                            (static_cast<double>(opts.replications) * static_cast<double>(pairs));
        result.points.push_back(point);
    }
    return result;
}

}  // namespace mbcsim
