#pragma once

#include "mbcsim/model.hpp"
#include "mbcsim/rng.hpp"

namespace mbcsim {

// Samples an m-regular assignment with no self-review and, when configured,
// no mutual pairs. Construction: m rounds of rejected random permutations
// with swap repair, followed by a randomized 2-swap mixing walk whose
// stationary law is uniform over valid assignments. The whole procedure is
// equivariant under relabeling PIs, so no proposal index is favored.
// Throws SamplingExhausted when the repair budget runs out (tiny groups
// with mutual review forbidden).
Assignment sample_assignment(const GroupConfig& cfg, Rng& rng);

// Resamples until `proposal` lands in `reviewer`'s pile (reviewer ∈ R_proposal),
// i.e. the exact conditional distribution given that event.
Assignment sample_assignment_conditioned(const GroupConfig& cfg, Rng& rng, int reviewer,
                                         int proposal);

// True iff regularity (row and column sums m), no-self-review and, when
// mutual review is forbidden, the no-mutual-pair constraint all hold.
bool incidence_check(const Assignment& a, const GroupConfig& cfg);

}  // namespace mbcsim
