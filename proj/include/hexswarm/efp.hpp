#pragma once

#include <set>
#include <string>
#include <vector>

#include "hexswarm/hexgrid.hpp"

namespace hexswarm {

/// Edge-following set: unoccupied lattice points adjacent to occupancy.
std::set<LatticePoint> edge_following_set(const std::set<LatticePoint>& occ, const Frame& f);

struct EfpCycle {
    bool ok = false;
    std::vector<LatticePoint> points;  // ordered along the contact curve in
                                       // the frame's orbit direction
    std::string error;
};

/// The distance-d contact curve around the occupancy, as the ordered sequence
/// of edge-following points it passes through. ok iff the curve is a single
/// cycle visiting every edge-following point. Two points are consecutive iff
/// they sit 60 degrees apart around a shared occupied pivot and the arc
/// between them stays at distance >= d from every robot.
EfpCycle efp_cycle(const std::set<LatticePoint>& occ, const Frame& f);

/// Walk the cycle from `from` to `to` in the orbit direction; returns the
/// ordered points including both endpoints. Empty on failure.
std::vector<LatticePoint> efp_walk(const EfpCycle& cycle, const LatticePoint& from,
                                   const LatticePoint& to);

}  // namespace hexswarm
