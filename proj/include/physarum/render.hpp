#pragma once

// Rasterisation of world state to 8-bit images: a colour frame for humans
// (environment tints, diverging trail shading, node outlines, particles)
// and flat grayscale exports for analysis pipelines.

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "physarum/image_io.hpp"
#include "physarum/world.hpp"

namespace physarum {

namespace render_detail {

inline std::uint8_t lerp8(std::uint8_t from, double to, double t) {
    return static_cast<std::uint8_t>(std::lround(from + (to - from) * t));
}

} // namespace render_detail

// Trail value at `cell` mapped onto [0,255] with 128 = zero; values at or
// beyond +/-clamp saturate. Negative values occur under repellent projection.
inline std::uint8_t trail_shade(double v, double clamp) {
    const double c = std::clamp(v, -clamp, clamp);
    return static_cast<std::uint8_t>(std::lround(255.0 * (c + clamp) / (2.0 * clamp)));
}

inline Image8 render_trail(const TrailField& field, double clamp) {
    Image8 img(field.width(), field.height(), 1);
    const std::vector<double>& v = field.values();
    for (std::size_t i = 0; i < v.size(); ++i) img.pixels[i] = trail_shade(v[i], clamp);
    return img;
}

inline Image8 render_occupancy(const OccupancyGrid& occ) {
    const BinaryMask& m = occ.mask();
    Image8 img(m.width(), m.height(), 1);
    for (std::size_t i = 0; i < m.size(); ++i) img.pixels[i] = m[i] ? 255 : 0;
    return img;
}

inline Image8 render_frame(const World& world) {
    using render_detail::lerp8;
    const Scenario& sc = world.scenario();
    const EnvironmentMasks& masks = world.masks();
    const double clamp = sc.render.trail_clamp;
    Image8 img(sc.width, sc.height, 3);

    const std::vector<double>& trail = world.field().values();
    const std::optional<Substrate>& sub = world.substrate();

    for (int y = 0; y < sc.height; ++y) {
        for (int x = 0; x < sc.width; ++x) {
            const std::size_t i = static_cast<std::size_t>(y) * sc.width + x;
            double r = 245, g = 245, b = 245;
            if (masks.obstacle[i]) {
                r = g = b = 90;
            } else {
                if (sub && sub->concentration[i] > 0 && !sub->consumed[i]) {
                    r *= 0.95; g *= 0.92; b *= 0.75;
                }
                if (masks.light[i]) { r *= 0.82; g *= 0.88; }
                if (masks.repellent[i]) { g *= 0.85; b *= 0.85; }
                const double v = trail[i];
                if (v > 0) {
                    const double t = 0.9 * std::min(v / clamp, 1.0);
                    r = r + (30 - r) * t; g = g + (110 - g) * t; b = b + (45 - b) * t;
                } else if (v < 0) {
                    const double t = 0.9 * std::min(-v / clamp, 1.0);
                    r = r + (150 - r) * t; g = g + (35 - g) * t; b = b + (35 - b) * t;
                }
            }
            img.pixels[i * 3 + 0] = static_cast<std::uint8_t>(std::lround(r));
            img.pixels[i * 3 + 1] = static_cast<std::uint8_t>(std::lround(g));
            img.pixels[i * 3 + 2] = static_cast<std::uint8_t>(std::lround(b));
        }
    }

    // Node footprint outlines: footprint cells with a non-footprint 4-neighbour.
    BinaryMask foot(sc.width, sc.height, 0);
    for (const StimulusNode& n : world.nodes())
        for (const std::size_t cell : n.cells) foot[cell] = 1;
    for (const StimulusNode& n : world.nodes()) {
        const bool attract = n.concentration > 0;
        for (const std::size_t cell : n.cells) {
            const int x = static_cast<int>(cell % sc.width);
            const int y = static_cast<int>(cell / sc.width);
            bool edge = false;
            const int dx[4] = {1, -1, 0, 0}, dy[4] = {0, 0, 1, -1};
            for (int k = 0; k < 4 && !edge; ++k) {
                const int nx = x + dx[k], ny = y + dy[k];
                edge = nx < 0 || nx >= sc.width || ny < 0 || ny >= sc.height ||
                       !foot.at(nx, ny);
            }
            if (!edge) continue;
            img.pixels[cell * 3 + 0] = attract ? 235 : 185;
            img.pixels[cell * 3 + 1] = attract ? 170 : 40;
            img.pixels[cell * 3 + 2] = attract ? 30 : 170;
        }
    }

    for (const Particle& p : world.particles()) {
        const std::size_t i =
            static_cast<std::size_t>(p.cell_y()) * sc.width + p.cell_x();
        img.pixels[i * 3 + 0] = img.pixels[i * 3 + 1] = img.pixels[i * 3 + 2] = 255;
    }
    return img;
}

} // namespace physarum
