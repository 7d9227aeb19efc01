#pragma once

// Density-driven population change.
//
// Division: a particle with gmin..gmax occupied neighbours in the 9x9
// window around its cell (itself excluded) spawns a child into a uniformly
// chosen free adjacent cell with probability p_div. Survival: a particle
// with fewer than survival_min occupied neighbours in the 5x5 window dies
// with probability p_die. Both tests run on their own tick schedule, after
// the motor/sensory phase, against an occupancy snapshot taken when the
// phase starts, so results do not depend on iteration order; only the RNG
// draw sequence does, which is why callers iterate in shuffled order.
//
// With p_div = 0 and survival_min = 0 the population is exactly constant.

#include <cstdint>
#include <vector>

#include "physarum/particle.hpp"
#include "physarum/rng.hpp"

namespace physarum {

struct DivisionParams {
    int gmin = 0;
    int gmax = 10;
    int interval = 5;
    double p_div = 1.0;
};

struct SurvivalParams {
    int survival_min = 1;
    int interval = 5;
    double p_die = 1.0;
};

struct PopulationParams {
    DivisionParams division;
    SurvivalParams survival;

    static PopulationParams fixed() {
        PopulationParams p;
        p.division.p_div = 0.0;
        p.survival.survival_min = 0;
        return p;
    }
};

inline void validate(const PopulationParams& p) {
    if (p.division.interval < 1 || p.survival.interval < 1)
        throw ValidationError("population: intervals must be >= 1");
    if (p.division.gmin < 0 || p.division.gmax < p.division.gmin)
        throw ValidationError("population: need 0 <= gmin <= gmax");
    if (p.survival.survival_min < 0)
        throw ValidationError("population: survival_min must be >= 0");
    if (p.division.p_div < 0.0 || p.division.p_div > 1.0 ||
        p.survival.p_die < 0.0 || p.survival.p_die > 1.0)
        throw ValidationError("population: probabilities must lie in [0, 1]");
}

// occupied cells in the (2*half+1)^2 window around (cx, cy), centre excluded;
// the window wraps on periodic lattices and is clipped on walled ones
inline int count_window(const BinaryMask& occupancy, int cx, int cy, int half,
                        Boundary boundary) {
    const int w = occupancy.width(), h = occupancy.height();
    int n = 0;
    for (int dy = -half; dy <= half; ++dy) {
        for (int dx = -half; dx <= half; ++dx) {
            if (dx == 0 && dy == 0) continue;
            int x = cx + dx, y = cy + dy;
            if (boundary == Boundary::periodic) {
                x = x < 0 ? x + w : (x >= w ? x - w : x);
                y = y < 0 ? y + h : (y >= h ? y - h : y);
            } else if (x < 0 || x >= w || y < 0 || y >= h) {
                continue;
            }
            n += occupancy.at(x, y) ? 1 : 0;
        }
    }
    return n;
}

// Runs the division test for one particle against `snapshot`, inserting the
// child into `live` occupancy so two parents cannot claim one cell. Returns
// true and fills `child` when a division happened. Draw order is fixed:
// acceptance coin first, then placement, then child heading.
inline bool division_test(const Particle& p, const BinaryMask& snapshot,
                          OccupancyGrid& live, const EnvironmentMasks* masks,
                          Boundary boundary, const DivisionParams& params,
                          Rng& rng, Particle& child) {
    const int cx = p.cell_x(), cy = p.cell_y();
    const int n = count_window(snapshot, cx, cy, 4, boundary);
    if (n < params.gmin || n > params.gmax) return false;
    if (!rng.chance(params.p_div)) return false;

    const int w = snapshot.width(), h = snapshot.height();
    int free_x[8], free_y[8];
    int free_count = 0;
    for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            int x = cx + dx, y = cy + dy;
            if (boundary == Boundary::periodic) {
                x = x < 0 ? x + w : (x >= w ? x - w : x);
                y = y < 0 ? y + h : (y >= h ? y - h : y);
            } else if (x < 0 || x >= w || y < 0 || y >= h) {
                continue;
            }
            if (live.occupied(x, y)) continue;
            if (masks && masks->obstacle.at(x, y)) continue;
            free_x[free_count] = x;
            free_y[free_count] = y;
            ++free_count;
        }
    }
    if (free_count == 0) return false;
    const int pick = static_cast<int>(rng.below(static_cast<std::uint64_t>(free_count)));
    child = Particle{};
    child.x = free_x[pick];
    child.y = free_y[pick];
    child.set_heading(rng.heading_deg());
    live.set(free_x[pick], free_y[pick]);
    return true;
}

// Survival test for one particle against `snapshot`. Returns true when the
// particle lives on.
inline bool survival_test(const Particle& p, const BinaryMask& snapshot,
                          Boundary boundary, const SurvivalParams& params,
                          Rng& rng) {
    const int m = count_window(snapshot, p.cell_x(), p.cell_y(), 2, boundary);
    if (m >= params.survival_min) return true;
    return !rng.chance(params.p_die);
}

} // namespace physarum
