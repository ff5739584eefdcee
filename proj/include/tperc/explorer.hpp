// Lazy interface explorations that read site bits on demand.
//
// Both tracers walk one percolation interface in a truncated domain and return
// exactly what the dense labeling would on the same domain and seed, while only
// touching the sites next to that interface. Sites outside the domain count as
// the left colour, which makes its frame act like the point at infinity.
#pragma once

#include <cstddef>
#include <vector>

#include "tperc/configuration.hpp"
#include "tperc/partition.hpp"

namespace tperc {

struct RayFirstTrace {
    std::vector<int> first_sites;  // ascending, same as ray_first_sites on the dense half plane
    std::size_t steps = 0;
};

// Half plane `d`: sites k in [1, n] whose `phase` cluster reaches [-L, 0] and
// avoids [1, k-1]. Phase::Closed gives the colour-swapped count.
RayFirstTrace trace_ray_first(const DomainSpec& d, const SeedRecord& seed, Phase phase = Phase::Open);

struct SlitTrace {
    int S = 0;
    std::size_t steps = 0;
};

// Cut plane `d` with cut_end = B: closed clusters joining the boundary of
// [A+1, B] with the boundary of [-L, 0] plus the box frame; equals window_S(...).S.
SlitTrace trace_cut_window(const DomainSpec& d, int A, const SeedRecord& seed);

}  // namespace tperc
