#pragma once

// Convex hull, monotone chain. Returns vertices in counter-clockwise order
// (mathematical convention: positive cross product turns left), collinear
// boundary points excluded. Degenerate inputs collapse: one point returns
// itself, a fully collinear set returns its two extreme points.

#include <algorithm>
#include <vector>

#include "physarum/geometry.hpp"

namespace physarum {

inline PointSet convex_hull(PointSet points) {
    std::sort(points.begin(), points.end(), [](const Vec2& a, const Vec2& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    points.erase(std::unique(points.begin(), points.end()), points.end());
    const std::size_t n = points.size();
    if (n <= 2) return points;

    std::vector<Vec2> hull(2 * n);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i) { // lower chain
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], points[i] - hull[k - 2]) <= 0.0)
            --k;
        hull[k++] = points[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = n - 1; i-- > 0;) { // upper chain
        while (k >= lower && cross(hull[k - 1] - hull[k - 2], points[i] - hull[k - 2]) <= 0.0)
            --k;
        hull[k++] = points[i];
    }
    hull.resize(k - 1); // last point repeats the first
    return hull;
}

// shoelace; hull must be in CCW order
inline double polygon_area(const PointSet& polygon) {
    const std::size_t n = polygon.size();
    if (n < 3) return 0.0;
    double twice = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        twice += cross(polygon[i], polygon[(i + 1) % n]);
    return 0.5 * twice;
}

} // namespace physarum
