#include "mbcsim/oracle.hpp"

#include <cmath>

namespace mbcsim::oracle {

namespace {

double log_choose(int n, int k) {
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double signed_distance_power(int from, int to, double p) {
    // (from - to)/|from - to|^p, the competitor-distance weight
    const double d = std::abs(from - to);
    return (from > to ? 1.0 : -1.0) * std::pow(d, 1.0 - p);
}

double inverse_distance_power(int a, int b, double p) {
    return 1.0 / std::pow(std::abs(a - b), p);
}

}  // namespace

double borda_pmf(int merit, int score, const UtilityParams& u) {
    const int n = u.n, m = u.m;
    if (merit < 1 || merit > n || score < 0 || score > m - 1) return 0.0;
    const int below = merit - score - 1;  // pile members worse than `merit`
    if (below < 0 || below > n - m) return 0.0;
    return std::exp(log_choose(m - 1, score) + log_choose(n - m, below) -
                    log_choose(n - 1, merit - 1));
}

double expected_mbc(int merit, int dishonest_reviewers, const UtilityParams& u) {
    const double n = u.n, m = u.m, e = dishonest_reviewers;
    return (1.0 - e / m) * (merit - 1) / (n - 1) + (e / m) * (n - merit) / (n - 1);
}

double utility_truthful(int merit, const UtilityParams& u) {
    double sum = 0.0;
    for (int j = 1; j <= u.n; ++j)
        if (j != merit) sum += signed_distance_power(merit, j, u.p);
    return sum / (u.n - 1);
}

DeviationUtility utility_evil(int merit, const UtilityParams& u) {
    DeviationUtility out;
    out.truthful = utility_truthful(merit, u);
    const double n = u.n;
    double sum = 0.0;
    for (int j = 1; j <= u.n; ++j)
        if (j != merit) sum += (j - (n + 1) / 2.0) * inverse_distance_power(merit, j, u.p);
    out.correction = 2.0 / ((n - 1) * (n - 1)) * sum;
    out.total = out.truthful + out.correction;
    return out;
}

DeviationUtility utility_evil_with_bonus(int merit, const UtilityParams& u) {
    DeviationUtility out;
    out.truthful = utility_truthful(merit, u);
    const double n = u.n;
    double sum = 0.0;
    for (int j = 1; j <= u.n; ++j)
        if (j != merit) sum += (3.0 - 1.0 / n - 2.0 * j) * inverse_distance_power(merit, j, u.p);
    out.correction = sum / ((n - 1) * (n - 1));
    out.total = out.truthful + out.correction;
    return out;
}

double expected_mbc_ally(int ally_merit, const UtilityParams& u) {
    const double n = u.n, m = u.m, j = ally_merit;
    return (j - 1) / (n - 1) + (n - j) / (m * (n - 1));
}

double bystander_mbc_shift(double k_merit, const UtilityParams& u) {
    const double n = u.n, m = u.m;
    return -(k_merit - 1.0 - (m - 2.0) / (m - 1.0) * (n - k_merit)) / ((n - 1) * (n - 1));
}

double expected_mbc_bystander(int k_merit, const UtilityParams& u) {
    const double n = u.n;
    return (k_merit - 1) / (n - 1) + bystander_mbc_shift(k_merit, u);
}

CollusionUtilities utility_collusion(int colluder_merit, int ally_merit, const UtilityParams& u,
                                     double expected_bonus_shortfall) {
    const int i = colluder_merit, j = ally_merit;
    const double n = u.n, m = u.m;
    CollusionUtilities out;

    out.ally.baseline = utility_truthful(j, u);
    double inv_sum = 0.0, rival_sum_j = 0.0;
    for (int k = 1; k <= u.n; ++k) {
        if (k == j) continue;
        inv_sum += inverse_distance_power(j, k, u.p);
        if (k != i)
            rival_sum_j += (k - 1.0 - (m - 2.0) / (m - 1.0) * (n - k)) *
                           inverse_distance_power(j, k, u.p);
    }
    out.ally.mbc_boost = (n - j) / (m * (n - 1)) * inv_sum;
    out.ally.rival_shift = rival_sum_j / ((n - 1) * (n - 1));
    out.ally.total = out.ally.baseline + out.ally.mbc_boost + out.ally.rival_shift;

    out.colluder.baseline = utility_truthful(i, u);
    double rival_sum_i = 0.0, inv_sum_i = 0.0;
    for (int k = 1; k <= u.n; ++k) {
        if (k == i) continue;
        inv_sum_i += inverse_distance_power(i, k, u.p);
        if (k != j)
            rival_sum_i += (k - 1.0 - (m - 2.0) / (m - 1.0) * (n - k)) *
                           inverse_distance_power(i, k, u.p);
    }
    out.colluder.reverse_effect = rival_sum_i / ((n - 1) * (n - 1));
    out.colluder.ally_boost_loss = -(n - j) / (m * (n - 1)) * inverse_distance_power(i, j, u.p);
    out.colluder.bonus_loss = -expected_bonus_shortfall * inv_sum_i;
    out.colluder.total = out.colluder.baseline + out.colluder.reverse_effect +
                         out.colluder.ally_boost_loss + out.colluder.bonus_loss;
    return out;
}

}  // namespace mbcsim::oracle
