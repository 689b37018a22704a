#pragma once

#include "mbcsim/model.hpp"
#include "mbcsim/rng.hpp"

namespace mbcsim {

// Perceived values r_ij for one reviewer's pile, slot-aligned with it.
struct Perception {
    std::vector<double> value;
};

// Draws one perceived value per pile member: merit plus Gaussian noise,
// plus a per-reviewer ±delta_mu offset for controversial proposals. Exactly
// one draw from `noise` is consumed per slot regardless of sigma, so paired
// scenario legs see identical noise; the controversy sign comes from the
// separate `signs` stream.
Perception perceive(int reviewer, std::span<const int32_t> pile, const BehaviorProfile& profile,
                    Rng& noise, Rng& signs);

// All ranking ops return slot-aligned Borda scores forming a permutation of
// {0, ..., m-1}. Exact perceived-value ties (possible only through merit
// collisions under degenerate noise) are broken uniformly via `ties`.
std::vector<int32_t> rank_honest(const Perception& p, Rng& ties);
std::vector<int32_t> rank_reverse(const Perception& p, Rng& ties);

// Ally in pile: ally gets m-1 and the rest get m-2 down to 0 in reverse
// perceived order (best of the rest gets 0). Ally absent: identical to
// rank_honest.
std::vector<int32_t> rank_one_sided_favor(const Perception& p, std::span<const int32_t> pile,
                                          int ally, Rng& ties);

// Ally in pile: ally gets m-1 and the rest keep their honest relative order
// on 0..m-2. Ally absent: identical to rank_honest.
std::vector<int32_t> rank_reciprocal_favor(const Perception& p, std::span<const int32_t> pile,
                                           int ally, Rng& ties);

// Full round: perceives and ranks every reviewer's pile per the profile.
ReviewRound submit_round(const GroupConfig& cfg, const Assignment& a,
                         const BehaviorProfile& profile, Rng& noise, Rng& signs, Rng& ties);

}  // namespace mbcsim
