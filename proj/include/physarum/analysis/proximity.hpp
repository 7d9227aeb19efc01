#pragma once

// Proximity graphs over a point set: Euclidean minimum spanning tree,
// relative neighbourhood graph, and Gabriel graph. All three use the same
// double arithmetic, and membership predicates use strict inequalities, so
// the classical nesting MST subset-of RNG subset-of Gabriel holds for the
// computed graphs as well, ties included.

#include <algorithm>
#include <vector>

#include "physarum/analysis/network.hpp"
#include "physarum/geometry.hpp"

namespace physarum {

struct WeightedEdge {
    int a = 0, b = 0; // a < b
    double length = 0.0;
};

// Kruskal with deterministic tie-break: candidate edges are taken in
// (length, a, b) order, so equal-length choices never depend on input
// permutation of the remaining edges.
inline std::vector<WeightedEdge> mst_edges(const PointSet& points) {
    const int n = static_cast<int>(points.size());
    std::vector<WeightedEdge> candidates;
    candidates.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            candidates.push_back({i, j, distance(points[i], points[j])});
    std::sort(candidates.begin(), candidates.end(),
              [](const WeightedEdge& l, const WeightedEdge& r) {
                  if (l.length != r.length) return l.length < r.length;
                  if (l.a != r.a) return l.a < r.a;
                  return l.b < r.b;
              });
    detail::UnionFind uf(points.size());
    std::vector<WeightedEdge> tree;
    for (const auto& e : candidates) {
        if (uf.unite(e.a, e.b)) {
            tree.push_back(e);
            if (static_cast<int>(tree.size()) == n - 1) break;
        }
    }
    return tree;
}

inline double total_length(const std::vector<WeightedEdge>& edges) {
    double sum = 0.0;
    for (const auto& e : edges) sum += e.length;
    return sum;
}

// (a, b) is an RNG edge unless some third point is strictly closer to both
// endpoints than they are to each other (the "lune" is empty).
inline std::vector<WeightedEdge> rng_edges(const PointSet& points) {
    const int n = static_cast<int>(points.size());
    std::vector<WeightedEdge> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double dij = distance(points[i], points[j]);
            bool blocked = false;
            for (int k = 0; k < n && !blocked; ++k) {
                if (k == i || k == j) continue;
                blocked = std::max(distance(points[i], points[k]),
                                   distance(points[j], points[k])) < dij;
            }
            if (!blocked) edges.push_back({i, j, dij});
        }
    }
    return edges;
}

// (a, b) is a Gabriel edge unless some third point lies strictly inside the
// circle with diameter ab.
inline std::vector<WeightedEdge> gabriel_edges(const PointSet& points) {
    const int n = static_cast<int>(points.size());
    std::vector<WeightedEdge> edges;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const Vec2 d = points[j] - points[i];
            const double dij2 = dot(d, d);
            bool blocked = false;
            for (int k = 0; k < n && !blocked; ++k) {
                if (k == i || k == j) continue;
                const Vec2 da = points[i] - points[k];
                const Vec2 db = points[j] - points[k];
                blocked = dot(da, da) + dot(db, db) < dij2;
            }
            if (!blocked) edges.push_back({i, j, distance(points[i], points[j])});
        }
    }
    return edges;
}

} // namespace physarum
