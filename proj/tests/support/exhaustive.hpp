#pragma once

// Test-only exhaustive oracle for tiny groups: enumerates every m-regular
// assignment, scores the honest zero-noise round with its own arithmetic
// (independent of the library mechanism code), and averages over all tie
// resolutions exactly in rational arithmetic.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace exhaustive {

struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d) : num(n), den(d) { reduce(); }

    static long long gcd(long long a, long long b) {
        if (a < 0) a = -a;
        if (b < 0) b = -b;
        while (b) {
            a %= b;
            std::swap(a, b);
        }
        return a;
    }
    void reduce() {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const long long g = gcd(num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }
    Rational& operator+=(const Rational& o) {
        num = num * o.den + o.num * den;
        den *= o.den;
        reduce();
        return *this;
    }
    Rational operator+(const Rational& o) const {
        Rational r = *this;
        r += o;
        return r;
    }
    Rational operator-(const Rational& o) const { return *this + Rational(-o.num, o.den); }
    Rational operator*(const Rational& o) const { return {num * o.num, den * o.den}; }
    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rational& o) const { return num * o.den < o.num * den; }
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

using Piles = std::vector<std::vector<int>>;

// Every m-regular assignment without self-review on n PIs.
inline std::vector<Piles> all_assignments(int n, int m) {
    std::vector<Piles> out;
    Piles piles(static_cast<size_t>(n));
    std::vector<int> remaining(static_cast<size_t>(n), m);

    auto per_reviewer = [&](auto&& self, int reviewer) -> void {
        if (reviewer == n) {
            out.push_back(piles);
            return;
        }
        std::vector<int>& pile = piles[static_cast<size_t>(reviewer)];
        auto choose = [&](auto&& inner, int from) -> void {
            if (static_cast<int>(pile.size()) == m) {
                self(self, reviewer + 1);
                return;
            }
            for (int p = from; p < n; ++p) {
                if (p == reviewer || remaining[static_cast<size_t>(p)] == 0) continue;
                remaining[static_cast<size_t>(p)]--;
                pile.push_back(p);
                inner(inner, p + 1);
                pile.pop_back();
                remaining[static_cast<size_t>(p)]++;
            }
        };
        choose(choose, 0);
    };
    per_reviewer(per_reviewer, 0);
    return out;
}

// Orders of `ids` grouped by equal keys: every within-group permutation,
// visited with its exact weight 1 / prod(group sizes!).
template <class Key, class Visit>
void for_each_tie_order(const std::vector<int>& ids_best_first, const std::vector<Key>& key,
                        const Visit& visit) {
    std::vector<std::vector<int>> groups;
    for (int id : ids_best_first) {
        if (!groups.empty() && key[static_cast<size_t>(groups.back().front())] ==
                                   key[static_cast<size_t>(id)])
            groups.back().push_back(id);
        else
            groups.push_back({id});
    }
    long long orders = 1;
    for (auto& g : groups) {
        long long f = 1;
        for (size_t k = 2; k <= g.size(); ++k) f *= static_cast<long long>(k);
        orders *= f;
        std::sort(g.begin(), g.end());
    }
    const Rational weight(1, orders);
    std::vector<int> order;
    auto rec = [&](auto&& self, size_t gi) -> void {
        if (gi == groups.size()) {
            visit(order, weight);
            return;
        }
        std::vector<int> g = groups[gi];
        std::sort(g.begin(), g.end());
        do {
            order.insert(order.end(), g.begin(), g.end());
            self(self, gi + 1);
            order.resize(order.size() - g.size());
        } while (std::next_permutation(g.begin(), g.end()));
    };
    rec(rec, 0);
}

// Exact funded probabilities for the honest zero-noise pipeline on a tiny
// group, averaged uniformly over assignments and all tie resolutions.
inline std::vector<Rational> funded_probabilities(int n, int m, int t, bool bonus_enabled) {
    const auto assignments = all_assignments(n, m);
    std::vector<Rational> prob(static_cast<size_t>(n));
    const Rational assignment_weight(1, static_cast<long long>(assignments.size()));

    for (const Piles& piles : assignments) {
        // honest zero-noise Borda: within a pile, score = count of worse members
        std::vector<int> total(static_cast<size_t>(n), 0);
        for (int i = 0; i < n; ++i)
            for (int p : piles[static_cast<size_t>(i)])
                for (int q : piles[static_cast<size_t>(i)])
                    total[static_cast<size_t>(p)] += q < p;

        std::vector<Rational> mbc(static_cast<size_t>(n));
        for (int j = 0; j < n; ++j)
            mbc[static_cast<size_t>(j)] = Rational(total[static_cast<size_t>(j)],
                                                   static_cast<long long>(m) * (m - 1));

        std::vector<int> ids(static_cast<size_t>(n));
        std::iota(ids.begin(), ids.end(), 0);
        std::sort(ids.begin(), ids.end(), [&](int a, int b) {
            if (total[static_cast<size_t>(a)] != total[static_cast<size_t>(b)])
                return total[static_cast<size_t>(a)] > total[static_cast<size_t>(b)];
            return a < b;
        });

        for_each_tie_order(ids, total, [&](const std::vector<int>& global_order,
                                           const Rational& order_weight) {
            std::vector<int> rank(static_cast<size_t>(n));
            for (int pos = 0; pos < n; ++pos)
                rank[static_cast<size_t>(global_order[static_cast<size_t>(pos)])] = pos;

            std::vector<Rational> rhat = mbc;
            if (bonus_enabled) {
                int q_max = 0;
                for (int k = 0; k < m; ++k) q_max += std::abs(m - 1 - 2 * k);
                const Rational spread =
                    mbc[static_cast<size_t>(global_order.front())] -
                    mbc[static_cast<size_t>(global_order.back())];
                if (!(spread == Rational(0, 1)) && q_max > 0) {
                    const Rational a = spread * Rational(1, n);
                    for (int i = 0; i < n; ++i) {
                        const auto& pile = piles[static_cast<size_t>(i)];
                        int q = 0;
                        for (int p : pile) {
                            int submitted = 0, restricted = 0;
                            for (int other : pile) {
                                submitted += other > p;  // honest: better merit above
                                restricted +=
                                    rank[static_cast<size_t>(other)] < rank[static_cast<size_t>(p)];
                            }
                            q += std::abs(submitted - restricted);
                        }
                        rhat[static_cast<size_t>(i)] +=
                            a * Rational(2LL * (q_max - q), q_max);
                    }
                }
            }

            // fund the top t; the cutoff tie group splits its slots evenly
            std::vector<Rational> distinct = rhat;
            std::sort(distinct.begin(), distinct.end(), [](const Rational& x, const Rational& y) {
                return y < x;
            });
            distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
            int filled = 0;
            for (const Rational& v : distinct) {
                std::vector<int> group;
                for (int j = 0; j < n; ++j)
                    if (rhat[static_cast<size_t>(j)] == v) group.push_back(j);
                if (filled + static_cast<int>(group.size()) <= t) {
                    for (int j : group)
                        prob[static_cast<size_t>(j)] += assignment_weight * order_weight;
                    filled += static_cast<int>(group.size());
                } else {
                    const int slots = t - filled;
                    if (slots > 0)
                        for (int j : group)
                            prob[static_cast<size_t>(j)] +=
                                assignment_weight * order_weight *
                                Rational(slots, static_cast<long long>(group.size()));
                    filled = t;
                }
                if (filled == t) break;
            }
        });
    }
    return prob;
}

}  // namespace exhaustive
