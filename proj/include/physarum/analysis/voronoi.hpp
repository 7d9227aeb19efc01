#pragma once

// Raster Voronoi oracle: exhaustive nearest-site labelling plus a bisector
// mask. A pixel is a bisector pixel when its two nearest sites are nearly
// equidistant (difference below tie_eps) or when any 4-neighbour carries a
// different label. Exact label ties go to the lowest site index, which
// makes the labelling reproducible; relabelling under a site permutation
// permutes the output accordingly for sites in general position.

#include <cmath>
#include <cstdint>
#include <limits>

#include "physarum/analysis/distance.hpp"
#include "physarum/errors.hpp"
#include "physarum/geometry.hpp"
#include "physarum/grid.hpp"

namespace physarum {

struct VoronoiRaster {
    Grid<std::int32_t> labels;
    BinaryMask bisectors;
};

inline VoronoiRaster voronoi_raster(const PointSet& sites, int width, int height,
                                    double tie_eps = 0.75) {
    if (sites.empty()) throw ValidationError("voronoi: need at least one site");
    VoronoiRaster out;
    out.labels = Grid<std::int32_t>(width, height, 0);
    out.bisectors = BinaryMask(width, height, 0);
    Grid<float> gap(width, height, 0.0f); // d2 - d1 per pixel
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            double best = std::numeric_limits<double>::infinity();
            double second = best;
            int label = 0;
            for (std::size_t s = 0; s < sites.size(); ++s) {
                const double dx = x - sites[s].x, dy = y - sites[s].y;
                const double d2 = dx * dx + dy * dy;
                if (d2 < best) {
                    second = best;
                    best = d2;
                    label = static_cast<int>(s);
                } else if (d2 < second) {
                    second = d2;
                }
            }
            out.labels.at(x, y) = label;
            gap.at(x, y) = static_cast<float>(
                sites.size() > 1 ? std::sqrt(second) - std::sqrt(best)
                                 : std::numeric_limits<double>::infinity());
        }
    }
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            bool bisector = gap.at(x, y) < tie_eps;
            const int label = out.labels.at(x, y);
            if (!bisector && x + 1 < width) bisector = out.labels.at(x + 1, y) != label;
            if (!bisector && x > 0) bisector = out.labels.at(x - 1, y) != label;
            if (!bisector && y + 1 < height) bisector = out.labels.at(x, y + 1) != label;
            if (!bisector && y > 0) bisector = out.labels.at(x, y - 1) != label;
            out.bisectors.at(x, y) = bisector ? 1 : 0;
        }
    }
    return out;
}

// Fraction of oracle bisector pixels at least exclude_radius from every
// site that lie within tol of a skeleton pixel. An empty skeleton scores
// zero; if no bisector pixel qualifies the score is vacuously one.
inline double bisector_coverage(const BinaryMask& skeleton, const BinaryMask& oracle,
                                const PointSet& sites, double exclude_radius,
                                double tol) {
    if (skeleton.width() != oracle.width() || skeleton.height() != oracle.height())
        throw ValidationError("bisector_coverage: mask dimensions differ");
    if (count_set(skeleton) == 0) return 0.0;
    const Grid<double> dist2 = squared_edt(skeleton);
    const double tol2 = tol * tol;
    const double ex2 = exclude_radius * exclude_radius;
    long total = 0, covered = 0;
    for (int y = 0; y < oracle.height(); ++y) {
        for (int x = 0; x < oracle.width(); ++x) {
            if (!oracle.at(x, y)) continue;
            bool excluded = false;
            for (const Vec2& s : sites) {
                const double dx = x - s.x, dy = y - s.y;
                if (dx * dx + dy * dy < ex2) {
                    excluded = true;
                    break;
                }
            }
            if (excluded) continue;
            ++total;
            if (dist2.at(x, y) <= tol2) ++covered;
        }
    }
    if (total == 0) return 1.0;
    return static_cast<double>(covered) / static_cast<double>(total);
}

} // namespace physarum
