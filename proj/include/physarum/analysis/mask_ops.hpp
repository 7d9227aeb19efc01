#pragma once

// Binary raster utilities shared by the network extractor, the geometry
// oracles, and the tests. Convention throughout the analysis code:
// foreground is 8-connected, background is 4-connected, which keeps
// component and hole counts consistent under that duality.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <vector>

#include "physarum/geometry.hpp"
#include "physarum/grid.hpp"

namespace physarum {

enum class Connectivity { four, eight };

// Flood-fill labelling. Labels are 1..n in scan order; returns n.
inline int label_components(const BinaryMask& mask, Connectivity conn,
                            Grid<std::int32_t>& labels) {
    const int w = mask.width(), h = mask.height();
    labels = Grid<std::int32_t>(w, h, 0);
    const int dx4[] = {1, -1, 0, 0}, dy4[] = {0, 0, 1, -1};
    const int dx8[] = {1, -1, 0, 0, 1, 1, -1, -1}, dy8[] = {0, 0, 1, -1, 1, -1, 1, -1};
    const int* dx = conn == Connectivity::four ? dx4 : dx8;
    const int* dy = conn == Connectivity::four ? dy4 : dy8;
    const int ndirs = conn == Connectivity::four ? 4 : 8;
    int next = 0;
    std::vector<std::size_t> stack;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::size_t start = mask.index(x, y);
            if (!mask[start] || labels[start]) continue;
            labels[start] = ++next;
            stack.assign(1, start);
            while (!stack.empty()) {
                const std::size_t i = stack.back();
                stack.pop_back();
                const int cx = static_cast<int>(i % w), cy = static_cast<int>(i / w);
                for (int d = 0; d < ndirs; ++d) {
                    const int nx = cx + dx[d], ny = cy + dy[d];
                    if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
                    const std::size_t j = mask.index(nx, ny);
                    if (mask[j] && !labels[j]) {
                        labels[j] = next;
                        stack.push_back(j);
                    }
                }
            }
        }
    }
    return next;
}

inline int count_components(const BinaryMask& mask, Connectivity conn) {
    Grid<std::int32_t> labels;
    return label_components(mask, conn, labels);
}

// Holes: 4-connected background components that do not touch the border.
inline int region_holes(const BinaryMask& mask) {
    const int w = mask.width(), h = mask.height();
    BinaryMask background(w, h, 0);
    for (std::size_t i = 0; i < mask.size(); ++i) background[i] = mask[i] ? 0 : 1;
    Grid<std::int32_t> labels;
    const int n = label_components(background, Connectivity::four, labels);
    std::vector<std::uint8_t> touches_border(static_cast<std::size_t>(n) + 1, 0);
    for (int x = 0; x < w; ++x) {
        if (labels.at(x, 0)) touches_border[labels.at(x, 0)] = 1;
        if (labels.at(x, h - 1)) touches_border[labels.at(x, h - 1)] = 1;
    }
    for (int y = 0; y < h; ++y) {
        if (labels.at(0, y)) touches_border[labels.at(0, y)] = 1;
        if (labels.at(w - 1, y)) touches_border[labels.at(w - 1, y)] = 1;
    }
    int holes = 0;
    for (int i = 1; i <= n; ++i) holes += touches_border[i] ? 0 : 1;
    return holes;
}

// 3x3 dilation, `times` rounds.
inline BinaryMask dilate(const BinaryMask& mask, int times = 1) {
    BinaryMask cur = mask;
    const int w = mask.width(), h = mask.height();
    for (int round = 0; round < times; ++round) {
        BinaryMask out(w, h, 0);
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                if (!cur.at(x, y)) continue;
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int nx = x + dx, ny = y + dy;
                        if (nx >= 0 && nx < w && ny >= 0 && ny < h) out.at(nx, ny) = 1;
                    }
                }
            }
        }
        cur = out;
    }
    return cur;
}

inline void draw_disc(BinaryMask& mask, double cx, double cy, double r) {
    const int x0 = static_cast<int>(std::floor(cx - r)), x1 = static_cast<int>(std::ceil(cx + r));
    const int y0 = static_cast<int>(std::floor(cy - r)), y1 = static_cast<int>(std::ceil(cy + r));
    for (int y = y0; y <= y1; ++y) {
        for (int x = x0; x <= x1; ++x) {
            if (!mask.in_bounds(x, y)) continue;
            const double dx = x - cx, dy = y - cy;
            if (dx * dx + dy * dy <= r * r) mask.at(x, y) = 1;
        }
    }
}

// Bresenham segment between rounded endpoints.
inline void draw_segment(BinaryMask& mask, double fx0, double fy0, double fx1, double fy1) {
    int x0 = static_cast<int>(std::lround(fx0)), y0 = static_cast<int>(std::lround(fy0));
    const int x1 = static_cast<int>(std::lround(fx1)), y1 = static_cast<int>(std::lround(fy1));
    const int dx = std::abs(x1 - x0), dy = -std::abs(y1 - y0);
    const int sx = x0 < x1 ? 1 : -1, sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    while (true) {
        if (mask.in_bounds(x0, y0)) mask.at(x0, y0) = 1;
        if (x0 == x1 && y0 == y1) break;
        const int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            x0 += sx;
        }
        if (e2 <= dx) {
            err += dx;
            y0 += sy;
        }
    }
}

inline void draw_polygon_outline(BinaryMask& mask, const PointSet& polygon) {
    const std::size_t n = polygon.size();
    if (n == 1) {
        draw_segment(mask, polygon[0].x, polygon[0].y, polygon[0].x, polygon[0].y);
        return;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 a = polygon[i], b = polygon[(i + 1) % n];
        draw_segment(mask, a.x, a.y, b.x, b.y);
    }
}

// Fills cells whose centre lies inside (or on) a convex CCW polygon.
inline void fill_convex_polygon(BinaryMask& mask, const PointSet& polygon) {
    const std::size_t n = polygon.size();
    if (n < 3) {
        draw_polygon_outline(mask, polygon);
        return;
    }
    for (int y = 0; y < mask.height(); ++y) {
        for (int x = 0; x < mask.width(); ++x) {
            const Vec2 p{static_cast<double>(x), static_cast<double>(y)};
            bool inside = true;
            for (std::size_t i = 0; i < n && inside; ++i) {
                const Vec2 a = polygon[i], b = polygon[(i + 1) % n];
                if (cross(b - a, p - a) < 0.0) inside = false;
            }
            if (inside) mask.at(x, y) = 1;
        }
    }
}

// Outer boundary: foreground pixels 4-adjacent to the background component
// that touches the border (interior holes do not produce boundary pixels).
inline BinaryMask outer_boundary(const BinaryMask& mask) {
    const int w = mask.width(), h = mask.height();
    BinaryMask background(w, h, 0);
    for (std::size_t i = 0; i < mask.size(); ++i) background[i] = mask[i] ? 0 : 1;
    Grid<std::int32_t> labels;
    label_components(background, Connectivity::four, labels);
    std::vector<std::uint8_t> outside(1, 0);
    auto mark_outside = [&](int x, int y) {
        const auto l = labels.at(x, y);
        if (l) {
            if (static_cast<std::size_t>(l) >= outside.size()) outside.resize(l + 1, 0);
            outside[l] = 1;
        }
    };
    for (int x = 0; x < w; ++x) {
        mark_outside(x, 0);
        mark_outside(x, h - 1);
    }
    for (int y = 0; y < h; ++y) {
        mark_outside(0, y);
        mark_outside(w - 1, y);
    }
    BinaryMask boundary(w, h, 0);
    const int dx4[] = {1, -1, 0, 0}, dy4[] = {0, 0, 1, -1};
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!mask.at(x, y)) continue;
            bool is_edge = false;
            for (int d = 0; d < 4 && !is_edge; ++d) {
                const int nx = x + dx4[d], ny = y + dy4[d];
                if (nx < 0 || nx >= w || ny < 0 || ny >= h) {
                    is_edge = true; // border cells face the outside
                } else if (!mask.at(nx, ny)) {
                    const auto l = labels.at(nx, ny);
                    if (l && static_cast<std::size_t>(l) < outside.size() && outside[l])
                        is_edge = true;
                }
            }
            if (is_edge) boundary.at(x, y) = 1;
        }
    }
    return boundary;
}

} // namespace physarum
