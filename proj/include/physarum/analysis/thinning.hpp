#pragma once

// Topology-preserving skeletonization.
//
// Iterative border erosion in two directional subcycles per pass
// (north/west-facing border pixels first, then south/east). Candidates are
// gathered from a snapshot, then deleted one at a time in raster order with
// the deletability test re-evaluated against the live raster at deletion
// time. A pixel may go only if it is "simple" (removing it changes neither
// the 8-connected foreground components nor the 4-connected background
// components) and not a line endpoint, so component count, cycle count, and
// hole count of the input survive thinning exactly; re-evaluating at
// deletion time is what keeps the parallel-style sweep safe on 2-wide
// structures. Runs until a full pass deletes nothing.

#include <array>
#include <cstdint>
#include <vector>

#include "physarum/grid.hpp"

namespace physarum {

namespace detail {

// ring offsets, row-major around the centre; bit k of a neighbourhood
// config corresponds to kNbrOffset[k]
constexpr int kNbrOffset[8][2] = {
    {-1, -1}, {0, -1}, {1, -1},
    {-1, 0},           {1, 0},
    {-1, 1},  {0, 1},  {1, 1},
};

inline bool ring_adjacent(int a, int b, bool diagonal) {
    const int dx = kNbrOffset[a][0] - kNbrOffset[b][0];
    const int dy = kNbrOffset[a][1] - kNbrOffset[b][1];
    const int adx = dx < 0 ? -dx : dx, ady = dy < 0 ? -dy : dy;
    if (adx > 1 || ady > 1) return false;
    if (adx + ady == 0) return false;
    return diagonal ? true : adx + ady == 1;
}

// component count of `members` positions within the ring under the given
// adjacency; tiny fixed-size union-find
inline int ring_components(std::uint8_t members, bool diagonal) {
    int parent[8];
    for (int i = 0; i < 8; ++i) parent[i] = i;
    auto find = [&](int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    };
    for (int i = 0; i < 8; ++i) {
        if (!(members & (1u << i))) continue;
        for (int j = i + 1; j < 8; ++j) {
            if (!(members & (1u << j))) continue;
            if (ring_adjacent(i, j, diagonal)) parent[find(i)] = find(j);
        }
    }
    int n = 0;
    for (int i = 0; i < 8; ++i)
        if ((members & (1u << i)) && find(i) == i) ++n;
    return n;
}

inline std::array<std::uint8_t, 256> build_simple_lut() {
    std::array<std::uint8_t, 256> lut{};
    for (int config = 0; config < 256; ++config) {
        const auto fg = static_cast<std::uint8_t>(config);
        const auto bg = static_cast<std::uint8_t>(~config);
        // foreground: one 8-connected ring component (every ring cell is
        // 8-adjacent to the centre, so adjacency to centre is free)
        if (ring_components(fg, true) != 1) continue;
        // background: one 4-connected ring component that actually touches
        // the centre through an edge neighbour (positions 1, 3, 4, 6)
        constexpr std::uint8_t kEdgeBits = (1u << 1) | (1u << 3) | (1u << 4) | (1u << 6);
        if (!(bg & kEdgeBits)) continue;
        // count only components containing an edge neighbour
        int touching = 0;
        std::uint8_t seen = 0;
        for (int i = 0; i < 8; ++i) {
            if (!(bg & (1u << i)) || (seen & (1u << i))) continue;
            // flood this component
            std::uint8_t comp = static_cast<std::uint8_t>(1u << i);
            bool grew = true;
            while (grew) {
                grew = false;
                for (int a = 0; a < 8; ++a) {
                    if (!(bg & (1u << a)) || (comp & (1u << a))) continue;
                    for (int b = 0; b < 8; ++b) {
                        if ((comp & (1u << b)) && ring_adjacent(a, b, false)) {
                            comp |= static_cast<std::uint8_t>(1u << a);
                            grew = true;
                            break;
                        }
                    }
                }
            }
            seen |= comp;
            if (comp & kEdgeBits) ++touching;
        }
        if (touching != 1) continue;
        lut[config] = 1;
    }
    return lut;
}

inline const std::array<std::uint8_t, 256>& simple_lut() {
    static const std::array<std::uint8_t, 256> lut = build_simple_lut();
    return lut;
}

} // namespace detail

// neighbourhood config of (x, y); off-lattice neighbours read background
inline std::uint8_t neighbour_config(const BinaryMask& mask, int x, int y) {
    std::uint8_t config = 0;
    for (int k = 0; k < 8; ++k) {
        const int nx = x + detail::kNbrOffset[k][0];
        const int ny = y + detail::kNbrOffset[k][1];
        if (mask.in_bounds(nx, ny) && mask.at(nx, ny))
            config |= static_cast<std::uint8_t>(1u << k);
    }
    return config;
}

inline int neighbour_count(std::uint8_t config) {
    int n = 0;
    for (int k = 0; k < 8; ++k) n += (config >> k) & 1;
    return n;
}

inline bool is_simple(std::uint8_t config) { return detail::simple_lut()[config] != 0; }

inline BinaryMask thin(const BinaryMask& mask) {
    BinaryMask skel = mask;
    const int w = skel.width(), h = skel.height();
    std::vector<std::size_t> candidates;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int sub = 0; sub < 2; ++sub) {
            candidates.clear();
            for (int y = 0; y < h; ++y) {
                for (int x = 0; x < w; ++x) {
                    if (!skel.at(x, y)) continue;
                    const std::uint8_t config = neighbour_config(skel, x, y);
                    const bool north = !(config & (1u << 1));
                    const bool west = !(config & (1u << 3));
                    const bool east = !(config & (1u << 4));
                    const bool south = !(config & (1u << 6));
                    const bool facing = sub == 0 ? (north || west) : (south || east);
                    if (!facing) continue;
                    const int n = neighbour_count(config);
                    if (n < 2) continue; // endpoints and isolated pixels stay
                    if (!is_simple(config)) continue;
                    candidates.push_back(skel.index(x, y));
                }
            }
            for (const std::size_t i : candidates) {
                const int x = static_cast<int>(i % w), y = static_cast<int>(i / w);
                const std::uint8_t config = neighbour_config(skel, x, y);
                const int n = neighbour_count(config);
                if (n < 2 || !is_simple(config)) continue;
                skel[i] = 0;
                changed = true;
            }
        }
    }
    return skel;
}

// Removes endpoint-rooted chains shorter than min_len pixels that terminate
// at a junction. Whole components that are themselves short paths survive.
// Bounded cascade: a junction uncovered by one round can seed the next.
inline BinaryMask prune_spurs(const BinaryMask& skeleton, int min_len, int rounds = 3) {
    BinaryMask skel = skeleton;
    const int w = skel.width(), h = skel.height();
    for (int round = 0; round < rounds; ++round) {
        bool removed_any = false;
        for (int y = 0; y < h; ++y) {
            for (int x = 0; x < w; ++x) {
                if (!skel.at(x, y)) continue;
                if (neighbour_count(neighbour_config(skel, x, y)) != 1) continue;
                // walk the chain from this endpoint
                std::vector<std::size_t> chain{skel.index(x, y)};
                int px = x, py = y, bx = -2, by = -2;
                bool hit_junction = false;
                while (static_cast<int>(chain.size()) <= min_len) {
                    int nx = -1, ny = -1, branches = 0;
                    for (const auto& off : detail::kNbrOffset) {
                        const int cx = px + off[0], cy = py + off[1];
                        if (!skel.in_bounds(cx, cy) || !skel.at(cx, cy)) continue;
                        if (cx == bx && cy == by) continue;
                        ++branches;
                        nx = cx;
                        ny = cy;
                    }
                    if (branches != 1) {
                        hit_junction = branches > 1;
                        break;
                    }
                    if (neighbour_count(neighbour_config(skel, nx, ny)) >= 3) {
                        hit_junction = true;
                        break;
                    }
                    chain.push_back(skel.index(nx, ny));
                    bx = px;
                    by = py;
                    px = nx;
                    py = ny;
                }
                if (hit_junction && static_cast<int>(chain.size()) <= min_len) {
                    for (const std::size_t i : chain) skel[i] = 0;
                    removed_any = true;
                }
            }
        }
        if (!removed_any) break;
    }
    return skel;
}

} // namespace physarum
