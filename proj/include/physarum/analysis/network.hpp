#pragma once

// Skeleton graph extraction.
//
// Pipeline: binarize -> optional dilation -> topology-preserving thinning
// -> optional spur pruning -> pixel classification (8-neighbour count:
// 1 endpoint, >=3 junction) -> adjacent junction pixels merged into one
// vertex -> chain tracing with chain-code lengths (1 per axial step,
// sqrt(2) per diagonal) -> anchor snapping.
//
// Tracing invariants: after thinning every non-vertex pixel has exactly two
// neighbours, and 8-adjacent junction pixels always share a cluster, so
// every chain is traced exactly once (departure half-steps are consumed at
// both ends). Chains no vertex reaches are pure cycles; each gets a marker
// vertex and a self-loop edge. Anchors first claim any vertices within
// r_snap (merging them, with short intra-merge edges contracted away);
// an anchor on the interior of a chain splits that edge instead, so a path
// running straight through a stimulus still anchors it.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <ostream>
#include <vector>

#include "physarum/analysis/mask_ops.hpp"
#include "physarum/analysis/thinning.hpp"
#include "physarum/geometry.hpp"
#include "physarum/grid.hpp"

namespace physarum {

enum class VertexKind { junction, endpoint, anchor };

struct NetworkVertex {
    double x = 0.0, y = 0.0;
    VertexKind kind = VertexKind::junction;
    int anchor_index = -1; // >= 0 once snapped to that anchor
    bool dead = false;     // merged away; compacted before return
};

struct NetworkEdge {
    int a = 0, b = 0;
    double chain_len = 0.0;           // along the traced pixel path
    double extra_a = 0.0, extra_b = 0.0; // snap displacement at each end
    std::vector<std::size_t> path;    // pixel indices, both terminals included
    bool dead = false;

    double length() const { return chain_len + extra_a + extra_b; }
};

struct NetworkGraph {
    int width = 0, height = 0;
    std::vector<NetworkVertex> vertices;
    std::vector<NetworkEdge> edges;
};

struct ExtractParams {
    int dilate_px = 0;    // applied to the mask before thinning
    int prune_px = 0;     // spur chains up to this length are removed
    PointSet anchors;
    double r_snap = 6.0;
};

namespace detail {

constexpr double kSqrt2 = 1.4142135623730951;

inline double step_cost(int dir) {
    const int dx = kNbrOffset[dir][0], dy = kNbrOffset[dir][1];
    return (dx != 0 && dy != 0) ? kSqrt2 : 1.0;
}

inline int dir_between(int w, std::size_t from, std::size_t to) {
    const int fx = static_cast<int>(from % w), fy = static_cast<int>(from / w);
    const int tx = static_cast<int>(to % w), ty = static_cast<int>(to / w);
    for (int d = 0; d < 8; ++d)
        if (fx + kNbrOffset[d][0] == tx && fy + kNbrOffset[d][1] == ty) return d;
    return -1;
}

} // namespace detail

inline NetworkGraph trace_graph(const BinaryMask& skel) {
    const int w = skel.width(), h = skel.height();
    NetworkGraph graph;
    graph.width = w;
    graph.height = h;

    Grid<std::int32_t> vertex_of(w, h, -1);
    Grid<std::uint8_t> degree(w, h, 0);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (skel.at(x, y))
                degree.at(x, y) = static_cast<std::uint8_t>(
                    neighbour_count(neighbour_config(skel, x, y)));

    // endpoints and isolated pixels
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!skel.at(x, y) || degree.at(x, y) > 1) continue;
            vertex_of.at(x, y) = static_cast<std::int32_t>(graph.vertices.size());
            graph.vertices.push_back({static_cast<double>(x), static_cast<double>(y),
                                      VertexKind::endpoint, -1, false});
        }
    }
    // junction clusters; the raster-first pixel names the vertex position
    std::vector<std::size_t> stack;
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!skel.at(x, y) || degree.at(x, y) < 3 || vertex_of.at(x, y) >= 0)
                continue;
            const auto id = static_cast<std::int32_t>(graph.vertices.size());
            graph.vertices.push_back({static_cast<double>(x), static_cast<double>(y),
                                      VertexKind::junction, -1, false});
            vertex_of.at(x, y) = id;
            stack.assign(1, skel.index(x, y));
            while (!stack.empty()) {
                const std::size_t i = stack.back();
                stack.pop_back();
                const int cx = static_cast<int>(i % w), cy = static_cast<int>(i / w);
                for (const auto& off : detail::kNbrOffset) {
                    const int nx = cx + off[0], ny = cy + off[1];
                    if (!skel.in_bounds(nx, ny) || !skel.at(nx, ny)) continue;
                    if (degree.at(nx, ny) < 3 || vertex_of.at(nx, ny) >= 0) continue;
                    vertex_of.at(nx, ny) = id;
                    stack.push_back(skel.index(nx, ny));
                }
            }
        }
    }

    Grid<std::uint8_t> used(w, h, 0); // departure half-steps already traced
    Grid<std::uint8_t> visited(w, h, 0);

    auto walk_chain = [&](std::int32_t vid, std::size_t p, int d) {
        NetworkEdge edge;
        edge.a = vid;
        edge.path.push_back(p);
        std::size_t prev = p;
        std::size_t cur = static_cast<std::size_t>(
            static_cast<long>(p) + detail::kNbrOffset[d][1] * w + detail::kNbrOffset[d][0]);
        edge.chain_len += detail::step_cost(d);
        edge.path.push_back(cur);
        while (vertex_of[cur] < 0) {
            visited[cur] = 1;
            const int cx = static_cast<int>(cur % w), cy = static_cast<int>(cur / w);
            std::size_t next = cur;
            int next_dir = -1;
            for (int nd = 0; nd < 8; ++nd) {
                const int nx = cx + detail::kNbrOffset[nd][0];
                const int ny = cy + detail::kNbrOffset[nd][1];
                if (!skel.in_bounds(nx, ny) || !skel.at(nx, ny)) continue;
                const std::size_t cand = skel.index(nx, ny);
                if (cand == prev) continue;
                next = cand;
                next_dir = nd;
                break;
            }
            edge.chain_len += detail::step_cost(next_dir);
            edge.path.push_back(next);
            prev = cur;
            cur = next;
        }
        edge.b = vertex_of[cur];
        used[p] |= static_cast<std::uint8_t>(1u << d);
        used[cur] |= static_cast<std::uint8_t>(1u << detail::dir_between(w, cur, prev));
        return edge;
    };

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            const std::int32_t vid = vertex_of.at(x, y);
            if (vid < 0) continue;
            const std::size_t p = skel.index(x, y);
            for (int d = 0; d < 8; ++d) {
                const int nx = x + detail::kNbrOffset[d][0];
                const int ny = y + detail::kNbrOffset[d][1];
                if (!skel.in_bounds(nx, ny) || !skel.at(nx, ny)) continue;
                if (vertex_of.at(nx, ny) == vid) continue; // intra-cluster
                if (used[p] & (1u << d)) continue;
                graph.edges.push_back(walk_chain(vid, p, d));
            }
        }
    }

    // untouched two-degree pixels form pure cycles; drop a marker vertex on
    // the raster-first pixel of each and trace the loop
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!skel.at(x, y) || degree.at(x, y) != 2) continue;
            if (visited.at(x, y) || vertex_of.at(x, y) >= 0) continue;
            const auto id = static_cast<std::int32_t>(graph.vertices.size());
            graph.vertices.push_back({static_cast<double>(x), static_cast<double>(y),
                                      VertexKind::junction, -1, false});
            vertex_of.at(x, y) = id;
            const std::size_t p = skel.index(x, y);
            for (int d = 0; d < 8; ++d) {
                const int nx = x + detail::kNbrOffset[d][0];
                const int ny = y + detail::kNbrOffset[d][1];
                if (!skel.in_bounds(nx, ny) || !skel.at(nx, ny)) continue;
                if (used[p] & (1u << d)) continue;
                graph.edges.push_back(walk_chain(id, p, d));
                break; // one departure traces the whole loop
            }
        }
    }
    return graph;
}

inline void snap_anchors(NetworkGraph& graph, const PointSet& anchors, double r_snap) {
    const int w = graph.width;
    for (std::size_t ai = 0; ai < anchors.size(); ++ai) {
        const Vec2 a = anchors[ai];
        // vertices inside the snap radius, nearest first
        std::vector<int> claimed;
        for (std::size_t vi = 0; vi < graph.vertices.size(); ++vi) {
            auto& v = graph.vertices[vi];
            if (v.dead || v.anchor_index >= 0) continue;
            if (distance({v.x, v.y}, a) <= r_snap) claimed.push_back(static_cast<int>(vi));
        }
        if (!claimed.empty()) {
            std::sort(claimed.begin(), claimed.end(), [&](int l, int r) {
                const double dl = distance({graph.vertices[l].x, graph.vertices[l].y}, a);
                const double dr = distance({graph.vertices[r].x, graph.vertices[r].y}, a);
                return dl != dr ? dl < dr : l < r;
            });
            const int keep = claimed[0];
            for (auto& e : graph.edges) {
                if (e.dead) continue;
                for (const int c : claimed) {
                    const Vec2 old{graph.vertices[c].x, graph.vertices[c].y};
                    if (e.a == c) {
                        e.extra_a += distance(old, a);
                        e.a = keep;
                    }
                    if (e.b == c) {
                        e.extra_b += distance(old, a);
                        e.b = keep;
                    }
                }
                // an edge pulled into a self-loop by this merge is a
                // contraction artifact unless it is genuinely long
                if (e.a == keep && e.b == keep && claimed.size() > 1 &&
                    e.length() <= 2.0 * r_snap)
                    e.dead = true;
            }
            for (const int c : claimed)
                if (c != keep) graph.vertices[c].dead = true;
            auto& kv = graph.vertices[keep];
            kv.x = a.x;
            kv.y = a.y;
            kv.kind = VertexKind::anchor;
            kv.anchor_index = static_cast<int>(ai);
            continue;
        }
        // no vertex nearby: look for a chain interior pixel to split
        int best_edge = -1;
        std::size_t best_k = 0;
        double best_d = r_snap;
        for (std::size_t ei = 0; ei < graph.edges.size(); ++ei) {
            const auto& e = graph.edges[ei];
            if (e.dead || e.path.size() < 3) continue;
            for (std::size_t k = 1; k + 1 < e.path.size(); ++k) {
                const Vec2 px{static_cast<double>(e.path[k] % w),
                              static_cast<double>(e.path[k] / w)};
                const double d = distance(px, a);
                if (d < best_d) {
                    best_d = d;
                    best_edge = static_cast<int>(ei);
                    best_k = k;
                }
            }
        }
        if (best_edge < 0) continue; // anchor has no nearby network
        auto& e = graph.edges[best_edge];
        const auto id = static_cast<int>(graph.vertices.size());
        graph.vertices.push_back({a.x, a.y, VertexKind::anchor, static_cast<int>(ai), false});
        NetworkEdge front, back;
        front.a = e.a;
        front.extra_a = e.extra_a;
        front.b = id;
        back.a = id;
        back.b = e.b;
        back.extra_b = e.extra_b;
        front.path.assign(e.path.begin(), e.path.begin() + best_k + 1);
        back.path.assign(e.path.begin() + best_k, e.path.end());
        for (std::size_t k = 1; k < front.path.size(); ++k)
            front.chain_len += detail::step_cost(
                detail::dir_between(w, front.path[k - 1], front.path[k]));
        for (std::size_t k = 1; k < back.path.size(); ++k)
            back.chain_len += detail::step_cost(
                detail::dir_between(w, back.path[k - 1], back.path[k]));
        front.extra_b = best_d;
        back.extra_a = best_d;
        e.dead = true;
        graph.edges.push_back(std::move(front));
        graph.edges.push_back(std::move(back));
    }

    // compact
    std::vector<int> remap(graph.vertices.size(), -1);
    std::vector<NetworkVertex> live_vertices;
    for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
        if (graph.vertices[i].dead) continue;
        remap[i] = static_cast<int>(live_vertices.size());
        live_vertices.push_back(graph.vertices[i]);
    }
    std::vector<NetworkEdge> live_edges;
    for (auto& e : graph.edges) {
        if (e.dead) continue;
        e.a = remap[e.a];
        e.b = remap[e.b];
        live_edges.push_back(std::move(e));
    }
    graph.vertices = std::move(live_vertices);
    graph.edges = std::move(live_edges);
}

struct ExtractResult {
    NetworkGraph graph;
    BinaryMask source;   // post-dilation binary input
    BinaryMask skeleton; // post-thinning (and pruning)
};

inline ExtractResult extract_network(const BinaryMask& mask, const ExtractParams& params = {}) {
    ExtractResult result;
    result.source = params.dilate_px > 0 ? dilate(mask, params.dilate_px) : mask;
    result.skeleton = thin(result.source);
    if (params.prune_px > 0)
        result.skeleton = prune_spurs(result.skeleton, params.prune_px);
    result.graph = trace_graph(result.skeleton);
    if (!params.anchors.empty())
        snap_anchors(result.graph, params.anchors, params.r_snap);
    return result;
}

// binarize a real-valued lattice at `threshold` (>=) first
inline ExtractResult extract_network(const Grid<double>& field, double threshold,
                                     const ExtractParams& params = {}) {
    BinaryMask mask(field.width(), field.height(), 0);
    for (std::size_t i = 0; i < field.size(); ++i)
        mask[i] = field[i] >= threshold ? 1 : 0;
    return extract_network(mask, params);
}

struct GraphMetrics {
    int vertices = 0;
    int edges = 0;
    int components = 0;
    int cycles = 0;
    int faces = 0;
    double total_length = 0.0;
    bool is_tree = false;
};

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
    }
    int find(int i) {
        while (parent[i] != i) i = parent[i] = parent[parent[i]];
        return i;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[b] = a;
        return true;
    }
};

} // namespace detail

inline GraphMetrics graph_metrics(const NetworkGraph& graph) {
    GraphMetrics m;
    m.vertices = static_cast<int>(graph.vertices.size());
    m.edges = static_cast<int>(graph.edges.size());
    detail::UnionFind uf(graph.vertices.size());
    for (const auto& e : graph.edges) {
        uf.unite(e.a, e.b);
        m.total_length += e.length();
    }
    for (std::size_t i = 0; i < graph.vertices.size(); ++i)
        if (uf.find(static_cast<int>(i)) == static_cast<int>(i)) ++m.components;
    m.cycles = m.edges - m.vertices + m.components;
    m.faces = m.cycles;
    m.is_tree = m.components == 1 && m.cycles == 0;
    return m;
}

struct ComponentStat {
    int vertices = 0;
    int edges = 0;
    double length = 0.0;
    int cycles = 0;
};

inline std::vector<ComponentStat> component_stats(const NetworkGraph& graph) {
    detail::UnionFind uf(graph.vertices.size());
    for (const auto& e : graph.edges) uf.unite(e.a, e.b);
    std::vector<int> slot(graph.vertices.size(), -1);
    std::vector<ComponentStat> stats;
    for (std::size_t i = 0; i < graph.vertices.size(); ++i) {
        const int root = uf.find(static_cast<int>(i));
        if (slot[root] < 0) {
            slot[root] = static_cast<int>(stats.size());
            stats.push_back({});
        }
        ++stats[slot[root]].vertices;
    }
    for (const auto& e : graph.edges) {
        auto& s = stats[slot[uf.find(e.a)]];
        ++s.edges;
        s.length += e.length();
    }
    for (auto& s : stats) s.cycles = s.edges - s.vertices + 1;
    return stats;
}

inline void write_graph(const NetworkGraph& graph, std::ostream& out) {
    out << std::setprecision(10);
    for (const auto& v : graph.vertices) {
        const char* kind = v.kind == VertexKind::anchor ? "anchor"
                           : v.kind == VertexKind::endpoint ? "endpoint"
                                                            : "junction";
        out << "v " << v.x << ' ' << v.y << ' ' << kind << '\n';
    }
    for (const auto& e : graph.edges)
        out << "e " << e.a << ' ' << e.b << ' ' << e.length() << '\n';
}

} // namespace physarum
