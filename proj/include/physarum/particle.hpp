#pragma once

// Agent sensing and motion.
//
// Each particle carries a continuous position and a heading in degrees.
// Three offset sensors (front-left, front, front-right) read the weighted
// field at so_px ahead of the particle, the side sensors rotated by
// +-sa_deg. Screen coordinates: headings grow clockwise on screen, "left"
// means heading - sa_deg. Per tick a particle first attempts one forward
// step of step_px (motor), then rotates from the fresh sensor reads.
//
// Occupancy enforces at most one particle per lattice cell. A step whose
// target cell is occupied by another particle, an obstacle, or outside a
// walled lattice is blocked: the particle keeps its position, re-rolls its
// heading uniformly, and deposits nothing. A successful step deposits
// `deposit` trail units into the cell it lands in.

#include <cmath>
#include <cstdint>
#include <vector>

#include "physarum/geometry.hpp"
#include "physarum/grid.hpp"
#include "physarum/rng.hpp"
#include "physarum/trail_field.hpp"

namespace physarum {

struct SensorProfile {
    double sa_deg = 22.5;  // sensor arm half-angle
    double ra_deg = 45.0;  // rotation per decision
    double so_px = 9.0;    // sensor offset distance
    double step_px = 1.0;  // forward step length
    double deposit = 5.0;  // trail laid down per successful step
};

inline void validate(const SensorProfile& p) {
    if (!(p.so_px > 0.0)) throw ValidationError("sensors: so_px must be positive");
    if (!(p.step_px > 0.0)) throw ValidationError("sensors: step_px must be positive");
    if (!(p.sa_deg >= 0.0 && p.sa_deg <= 180.0))
        throw ValidationError("sensors: sa_deg must lie in [0, 180]");
    if (!(p.ra_deg >= 0.0 && p.ra_deg <= 180.0))
        throw ValidationError("sensors: ra_deg must lie in [0, 180]");
}

// cos/sin of the sensor half-angle, hoisted out of the per-particle loop
struct SensorTrig {
    double cos_sa = 1.0;
    double sin_sa = 0.0;

    SensorTrig() = default;
    explicit SensorTrig(const SensorProfile& p)
        : cos_sa(std::cos(deg_to_rad(p.sa_deg))),
          sin_sa(std::sin(deg_to_rad(p.sa_deg))) {}
};

struct Particle {
    double x = 0.0, y = 0.0;
    double heading_deg = 0.0;
    double ch = 1.0, sh = 0.0; // cached cos/sin of heading
    std::uint8_t alive = 1;

    void set_heading(double deg) {
        heading_deg = wrap_deg(deg);
        const double r = deg_to_rad(heading_deg);
        ch = std::cos(r);
        sh = std::sin(r);
    }

    int cell_x() const { return static_cast<int>(std::lround(x)); }
    int cell_y() const { return static_cast<int>(std::lround(y)); }
};

class OccupancyGrid {
public:
    OccupancyGrid() = default;
    OccupancyGrid(int width, int height) : cells_(width, height, 0) {}

    int width() const { return cells_.width(); }
    int height() const { return cells_.height(); }
    int count() const { return count_; }

    bool occupied(int x, int y) const { return cells_.at(x, y) != 0; }
    bool occupied(std::size_t i) const { return cells_[i] != 0; }

    void set(int x, int y) {
        auto& c = cells_.at(x, y);
        count_ += c ? 0 : 1;
        c = 1;
    }
    void clear(int x, int y) {
        auto& c = cells_.at(x, y);
        count_ -= c ? 1 : 0;
        c = 0;
    }

    const BinaryMask& mask() const { return cells_; }

private:
    BinaryMask cells_;
    int count_ = 0;
};

struct SensorReads {
    double left = 0.0, front = 0.0, right = 0.0;
};

inline SensorReads sense(const Particle& p, const SensorProfile& profile,
                         const SensorTrig& trig, const TrailField& field) {
    // angle-addition instead of three trig calls per read
    const double cl = p.ch * trig.cos_sa + p.sh * trig.sin_sa; // cos(h - sa)
    const double sl = p.sh * trig.cos_sa - p.ch * trig.sin_sa; // sin(h - sa)
    const double cr = p.ch * trig.cos_sa - p.sh * trig.sin_sa; // cos(h + sa)
    const double sr = p.sh * trig.cos_sa + p.ch * trig.sin_sa; // sin(h + sa)
    const double so = profile.so_px;
    return {
        field.sample_weighted(p.x + so * cl, p.y + so * sl),
        field.sample_weighted(p.x + so * p.ch, p.y + so * p.sh),
        field.sample_weighted(p.x + so * cr, p.y + so * sr),
    };
}

// Rotation decision from one set of sensor reads, in degrees:
//   front strictly strongest        -> 0
//   front strictly weakest          -> +-ra, fair coin
//   left stronger than right        -> -ra
//   right stronger than left        -> +ra
//   all remaining ties              -> 0
// The coin is consumed only on the front-weakest branch, so equal reads
// leave the RNG untouched.
inline double decide_rotation(const SensorReads& s, const SensorProfile& profile,
                              Rng& rng) {
    const bool front_beats_left = s.front > s.left;
    const bool front_beats_right = s.front > s.right;
    if (front_beats_left && front_beats_right) return 0.0;
    if (s.front < s.left && s.front < s.right)
        return rng.chance(0.5) ? profile.ra_deg : -profile.ra_deg;
    if (s.left > s.right) return -profile.ra_deg;
    if (s.right > s.left) return profile.ra_deg;
    return 0.0;
}

// One forward step. Returns true when the particle moved (and deposited).
// A step that stays inside the particle's current cell counts as a move:
// the cell is occupied by the particle itself, so it never self-blocks.
inline bool motor_step(Particle& p, OccupancyGrid& occupancy, TrailField& field,
                       const SensorProfile& profile, Rng& rng) {
    double nx = p.x + profile.step_px * p.ch;
    double ny = p.y + profile.step_px * p.sh;
    const int w = field.width(), h = field.height();
    if (field.boundary() == Boundary::periodic) {
        // keep positions inside [-0.5, n - 0.5) so rounding lands in range
        if (nx < -0.5) nx += w;
        else if (nx >= w - 0.5) nx -= w;
        if (ny < -0.5) ny += h;
        else if (ny >= h - 0.5) ny -= h;
    }
    const int tx = static_cast<int>(std::lround(nx));
    const int ty = static_cast<int>(std::lround(ny));
    if (tx >= 0 && tx < w && ty >= 0 && ty < h) {
        const int ox = p.cell_x(), oy = p.cell_y();
        const bool same_cell = tx == ox && ty == oy;
        if (same_cell || (!occupancy.occupied(tx, ty) && !field.is_obstacle(tx, ty))) {
            p.x = nx;
            p.y = ny;
            if (!same_cell) {
                occupancy.clear(ox, oy);
                occupancy.set(tx, ty);
            }
            field.deposit(tx, ty, profile.deposit);
            return true;
        }
    }
    p.set_heading(rng.heading_deg());
    return false;
}

} // namespace physarum
