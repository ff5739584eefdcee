// Half-plane arm events between nested boxes.
//
// Boxes are B_r = [-r, r] x [0, r] in lattice coordinates. An arm from B_inner
// to distance `outer` is a path that starts in B_inner, stays inside B_outer and
// ends on the outer layer of B_outer (|m| = outer or h = outer). Because every
// path is confined to B_outer, one sample on a large box answers the question
// for all smaller outer radii.
#pragma once

#include <cstdint>

#include "tperc/configuration.hpp"

namespace tperc {

enum class ArmKind : std::uint8_t {
    One,    // an open arm
    Three,  // an open arm and two vertex-disjoint closed arms
};

const char* to_string(ArmKind k);

// Requires 0 <= inner < outer and B_outer inside the domain; throws ArgumentError otherwise.
bool arm_indicator(const Configuration& c, int inner, int outer, ArmKind kind);

// Number of vertex-disjoint arms of one phase, capped at `cap`.
int disjoint_arms(const Configuration& c, int inner, int outer, Phase phase, int cap);

}  // namespace tperc
