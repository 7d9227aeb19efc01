#pragma once

// Exact Euclidean distance transform (squared, lower-envelope-of-parabolas
// method, separable) and the discrete Hausdorff metric built on it.

#include <cmath>
#include <limits>
#include <vector>

#include "physarum/analysis/mask_ops.hpp"
#include "physarum/errors.hpp"
#include "physarum/grid.hpp"

namespace physarum {

namespace detail {

constexpr double kEdtInf = 1e20;

inline void edt_1d(const std::vector<double>& f, std::vector<double>& d, int n) {
    static thread_local std::vector<int> v;
    static thread_local std::vector<double> z;
    v.assign(n, 0);
    z.assign(n + 1, 0.0);
    int k = 0;
    v[0] = 0;
    z[0] = -kEdtInf;
    z[1] = kEdtInf;
    for (int q = 1; q < n; ++q) {
        double s;
        while (true) {
            const int p = v[k];
            s = ((f[q] + static_cast<double>(q) * q) -
                 (f[p] + static_cast<double>(p) * p)) /
                (2.0 * q - 2.0 * p);
            if (s <= z[k]) {
                --k;
            } else {
                break;
            }
        }
        ++k;
        v[k] = q;
        z[k] = s;
        z[k + 1] = kEdtInf;
    }
    k = 0;
    for (int q = 0; q < n; ++q) {
        while (z[k + 1] < q) ++k;
        const double diff = q - v[k];
        d[q] = diff * diff + f[v[k]];
    }
}

} // namespace detail

// Squared distance from every cell to the nearest set cell. Cells are
// treated as unit-spaced points at integer coordinates. A mask with no set
// cells transforms to kEdtInf everywhere.
inline Grid<double> squared_edt(const BinaryMask& mask) {
    const int w = mask.width(), h = mask.height();
    Grid<double> dist(w, h, 0.0);
    std::vector<double> f(std::max(w, h)), d(std::max(w, h));
    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y) f[y] = mask.at(x, y) ? 0.0 : detail::kEdtInf;
        detail::edt_1d(f, d, h);
        for (int y = 0; y < h; ++y) dist.at(x, y) = d[y];
    }
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) f[x] = dist.at(x, y);
        detail::edt_1d(f, d, w);
        for (int x = 0; x < w; ++x) dist.at(x, y) = d[x];
    }
    return dist;
}

// Symmetric discrete Hausdorff distance between the set-pixel clouds of two
// same-size masks. Empty input is an error, not a zero.
inline double hausdorff(const BinaryMask& a, const BinaryMask& b) {
    if (a.width() != b.width() || a.height() != b.height())
        throw ValidationError("hausdorff: mask dimensions differ");
    if (count_set(a) == 0 || count_set(b) == 0)
        throw ValidationError("hausdorff: empty mask");
    const Grid<double> to_b = squared_edt(b);
    const Grid<double> to_a = squared_edt(a);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] && to_b[i] > worst) worst = to_b[i];
        if (b[i] && to_a[i] > worst) worst = to_a[i];
    }
    return std::sqrt(worst);
}

} // namespace physarum
