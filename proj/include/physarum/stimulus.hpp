#pragma once

// External stimuli: discrete nodes and background substrate.
//
// A node owns a footprint (disc or square of lattice cells) and projects
// concentration * reserve_fraction into every footprint cell once per
// projection interval, before diffusion. Nodes flagged suppress_on_engulf
// additionally scale by (1 - covered_fraction), so a fully engulfed node
// goes quiet and stops out-shouting its neighbours. on_touch nodes project
// nothing until the first tick a particle stands on their footprint; the
// touch latches. Negative concentration makes a repellent node.
//
// Consumable nodes hold a finite reserve; every occupied footprint cell
// eats k_eat per tick until the reserve floors at zero, which retires the
// node. Background substrate cells each add their own concentration per
// tick until a cell has been visited t_c ticks in total, after which it is
// consumed and projects nothing. Both reserve and per-cell visits move
// monotonically, so depletion order is a usable experiment readout.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "physarum/errors.hpp"
#include "physarum/grid.hpp"
#include "physarum/particle.hpp"
#include "physarum/trail_field.hpp"

namespace physarum {

enum class EmitMode { always, on_touch };

enum class FootprintShape { disc, square };

struct ProjectionParams {
    double k_proj = 0.05; // concentration per unit of 8-bit intensity
    double k_eat = 0.1;   // reserve drawn per occupied cell per tick
    double r_scale = 20.0; // reserve per unit intensity per footprint cell
    int t_c = 10;          // visits before a substrate cell is consumed
    int interval = 1;      // project every n-th tick
};

inline void validate(const ProjectionParams& p) {
    if (p.interval < 1) throw ValidationError("projection: interval must be >= 1");
    if (p.t_c < 1) throw ValidationError("projection: t_c must be >= 1");
    if (p.k_eat < 0.0 || p.k_proj < 0.0 || p.r_scale < 0.0)
        throw ValidationError("projection: rates must be non-negative");
}

struct StimulusNode {
    std::string id;
    double x = 0.0, y = 0.0;
    FootprintShape shape = FootprintShape::disc;
    double radius = 4.0; // disc radius or half square side
    double concentration = 0.0; // field units per projection at full reserve
    bool consumable = false;
    EmitMode emit = EmitMode::always;
    bool suppress_on_engulf = true;

    // runtime state, filled by resolve_footprint / world init
    std::vector<std::size_t> cells;
    double reserve_init = 0.0; // 0 means unlimited
    double reserve = 0.0;
    bool touched = false;
    bool depleted = false;
    int first_contact_tick = -1;
    int depleted_tick = -1;

    bool active() const { return !depleted; }
    double reserve_fraction() const {
        if (reserve_init <= 0.0) return 1.0;
        return reserve / reserve_init;
    }
};

// Materializes the footprint cell list. Disc keeps cells whose centre lies
// within `radius` of the node centre; square keeps |dx| and |dy| <= radius.
// Footprints must stay on the lattice and clear of obstacles.
inline void resolve_footprint(StimulusNode& node, int width, int height,
                              const BinaryMask* obstacle) {
    node.cells.clear();
    const int x0 = static_cast<int>(std::floor(node.x - node.radius));
    const int x1 = static_cast<int>(std::ceil(node.x + node.radius));
    const int y0 = static_cast<int>(std::floor(node.y - node.radius));
    const int y1 = static_cast<int>(std::ceil(node.y + node.radius));
    const double r2 = node.radius * node.radius;
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            const double dx = x - node.x, dy = y - node.y;
            const bool inside = node.shape == FootprintShape::disc
                                    ? dx * dx + dy * dy <= r2
                                    : std::abs(dx) <= node.radius &&
                                          std::abs(dy) <= node.radius;
            if (!inside) continue;
            if (x < 0 || x >= width || y < 0 || y >= height)
                throw ValidationError("node '" + node.id + "': footprint leaves lattice");
            if (obstacle && obstacle->at(x, y))
                throw ValidationError("node '" + node.id + "': footprint overlaps obstacle");
            node.cells.push_back(static_cast<std::size_t>(y) * width + x);
        }
    }
    if (node.cells.empty())
        throw ValidationError("node '" + node.id + "': empty footprint");
}

// reserve sizing for consumable nodes; intensity is the 8-bit-style scale
// the concentration was derived from
inline void init_reserve(StimulusNode& node, const ProjectionParams& params) {
    if (!node.consumable) {
        node.reserve_init = node.reserve = 0.0;
        return;
    }
    const double intensity =
        params.k_proj > 0.0 ? node.concentration / params.k_proj : 0.0;
    node.reserve_init = std::abs(intensity) * static_cast<double>(node.cells.size()) *
                        params.r_scale;
    node.reserve = node.reserve_init;
    if (node.reserve_init <= 0.0)
        throw ValidationError("node '" + node.id + "': consumable node needs a reserve");
}

struct Substrate {
    Grid<double> concentration;   // per-cell projection while unconsumed
    Grid<std::uint16_t> visits;
    BinaryMask consumed;
    int cells_total = 0;    // cells with concentration > 0
    int cells_consumed = 0;

    Substrate() = default;
    Substrate(int width, int height)
        : concentration(width, height, 0.0),
          visits(width, height, 0),
          consumed(width, height, 0) {}

    void finalize() {
        cells_total = 0;
        for (std::size_t i = 0; i < concentration.size(); ++i)
            if (concentration[i] > 0.0) ++cells_total;
        cells_consumed = 0;
    }

    int remaining() const { return cells_total - cells_consumed; }
};

// Adds node and substrate stimuli into the field. Runs before diffusion on
// ticks where step % interval == 0. Touch latching happens here so a node
// first touched on tick t starts projecting on tick t.
inline void project_stimuli(std::vector<StimulusNode>& nodes,
                            std::optional<Substrate>& substrate,
                            const OccupancyGrid& occupancy, TrailField& field,
                            int step, const ProjectionParams& params) {
    if (step % params.interval != 0) return;
    for (auto& node : nodes) {
        if (!node.active() || node.cells.empty()) continue;
        int covered = 0;
        for (std::size_t cell : node.cells)
            covered += occupancy.occupied(cell) ? 1 : 0;
        if (covered > 0 && node.first_contact_tick < 0) {
            node.first_contact_tick = step;
            node.touched = true;
        }
        if (node.emit == EmitMode::on_touch && !node.touched) continue;
        double c = node.concentration * node.reserve_fraction();
        if (node.suppress_on_engulf)
            c *= 1.0 - static_cast<double>(covered) /
                           static_cast<double>(node.cells.size());
        if (c == 0.0) continue;
        for (std::size_t cell : node.cells) field.add_unchecked(cell, c);
    }
    if (substrate) {
        auto& sub = *substrate;
        for (std::size_t i = 0; i < sub.concentration.size(); ++i) {
            const double c = sub.concentration[i];
            if (c > 0.0 && !sub.consumed[i]) field.add_unchecked(i, c);
        }
    }
}

// Consumption pass, after the population phase. Occupied footprint cells
// drain node reserves; occupied substrate cells accrue visits and flip to
// consumed at t_c. Returns nothing; depletion ticks are recorded in place.
inline void consume(std::vector<StimulusNode>& nodes,
                    std::optional<Substrate>& substrate,
                    const OccupancyGrid& occupancy, int step,
                    const ProjectionParams& params) {
    for (auto& node : nodes) {
        if (!node.consumable || node.depleted) continue;
        int covered = 0;
        for (std::size_t cell : node.cells)
            covered += occupancy.occupied(cell) ? 1 : 0;
        if (covered == 0) continue;
        node.reserve -= params.k_eat * covered;
        if (node.reserve <= 0.0) {
            node.reserve = 0.0;
            node.depleted = true;
            node.depleted_tick = step;
        }
    }
    if (substrate) {
        auto& sub = *substrate;
        const auto& occ = occupancy.mask();
        for (std::size_t i = 0; i < occ.size(); ++i) {
            if (!occ[i] || sub.consumed[i] || sub.concentration[i] <= 0.0) continue;
            if (++sub.visits[i] >= params.t_c) {
                sub.consumed[i] = 1;
                ++sub.cells_consumed;
            }
        }
    }
}

} // namespace physarum
