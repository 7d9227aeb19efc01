#pragma once

// Minimal point for three terminals.
//
// If every triangle angle is below 120 degrees the optimum interconnect is
// a single interior junction whose three rays meet at 120 degrees; it is
// found by iterative geometric-median refinement (Weiszfeld updates) from
// the centroid. Once any angle reaches 120 degrees (collinear triples show
// a 180-degree angle and land here too) the junction degenerates onto the
// wide-angle terminal and the best network is just the two shorter sides.

#include <algorithm>
#include <cmath>

#include "physarum/geometry.hpp"

namespace physarum {

struct SteinerResult {
    bool has_point = false;
    Vec2 point{};
    double total_length = 0.0;
};

inline SteinerResult steiner_point_3(Vec2 a, Vec2 b, Vec2 c) {
    const Vec2 tri[3] = {a, b, c};
    bool wide = false;
    for (int i = 0; i < 3 && !wide; ++i) {
        const Vec2 u = tri[(i + 1) % 3] - tri[i];
        const Vec2 v = tri[(i + 2) % 3] - tri[i];
        // angle at vertex i >= 120 deg  <=>  cos <= -1/2
        wide = dot(u, v) <= -0.5 * norm(u) * norm(v);
    }
    if (wide) {
        const double d0 = distance(a, b), d1 = distance(b, c), d2 = distance(a, c);
        SteinerResult r;
        r.total_length = d0 + d1 + d2 - std::max({d0, d1, d2});
        return r;
    }
    Vec2 p{(a.x + b.x + c.x) / 3.0, (a.y + b.y + c.y) / 3.0};
    for (int iter = 0; iter < 100000; ++iter) {
        double wsum = 0.0;
        Vec2 acc{};
        bool on_terminal = false;
        for (const Vec2& t : tri) {
            const double d = distance(p, t);
            if (d < 1e-12) {
                on_terminal = true;
                break;
            }
            const double w = 1.0 / d;
            wsum += w;
            acc = acc + w * t;
        }
        if (on_terminal) break; // cannot happen with all angles < 120 deg
        const Vec2 next{acc.x / wsum, acc.y / wsum};
        const double step = distance(next, p);
        p = next;
        if (step < 1e-13) break;
    }
    SteinerResult r;
    r.has_point = true;
    r.point = p;
    r.total_length = distance(p, a) + distance(p, b) + distance(p, c);
    return r;
}

} // namespace physarum
