#pragma once

// Shared chemoattractant lattice.
//
// Core behaviour per tick:
//   1) agents and stimuli deposit into cells (signed: negative = repellent)
//   2) diffuse_and_decay replaces every non-obstacle cell with the mean of
//      its 3x3 neighbourhood, then scales by (1 - decay)
// The update is synchronous (double buffered). Obstacle cells are pinned at
// zero: they accept no deposits, contribute zero to neighbours, and are
// re-zeroed after every diffusion pass. In walled mode, out-of-bounds
// neighbours contribute zero while the divisor stays 9, so the boundary
// absorbs mass; in periodic mode the lattice wraps and, with decay 0 and no
// obstacles, diffusion conserves total mass exactly.

#include <cmath>
#include <string>
#include <vector>

#include "physarum/errors.hpp"
#include "physarum/exposure.hpp"
#include "physarum/grid.hpp"

namespace physarum {

enum class Boundary { periodic, walled };

struct DiffusionParams {
    double decay = 0.1; // in [0, 1]
};

inline void validate(const DiffusionParams& p) {
    if (!(p.decay >= 0.0 && p.decay <= 1.0))
        throw ValidationError("diffusion: decay must lie in [0, 1]");
}

class TrailField {
public:
    TrailField() = default;

    TrailField(int width, int height, Boundary boundary,
               const EnvironmentMasks* masks = nullptr,
               ExposureWeights weights = {})
        : width_(width), height_(height), boundary_(boundary),
          masks_(masks), weights_(weights),
          values_(static_cast<std::size_t>(width) * height, 0.0),
          scratch_(values_.size(), 0.0) {
        if (width < 3 || height < 3)
            throw ValidationError("field: lattice must be at least 3x3");
    }

    int width() const { return width_; }
    int height() const { return height_; }
    Boundary boundary() const { return boundary_; }

    void bind_masks(const EnvironmentMasks* masks, ExposureWeights weights) {
        masks_ = masks;
        weights_ = weights;
    }

    bool is_obstacle(int x, int y) const {
        return masks_ && masks_->obstacle[masks_->obstacle.index(x, y)] != 0;
    }

    void deposit(int x, int y, double amount) {
        if (x < 0 || x >= width_ || y < 0 || y >= height_)
            throw FieldError("deposit outside lattice at (" + std::to_string(x) +
                             ", " + std::to_string(y) + ")");
        if (is_obstacle(x, y))
            throw FieldError("deposit into obstacle cell at (" + std::to_string(x) +
                             ", " + std::to_string(y) + ")");
        values_[index(x, y)] += amount;
    }

    // projection fast path; cells are validated obstacle-free at load time
    void add_unchecked(std::size_t cell, double amount) { values_[cell] += amount; }

    double value_at(int x, int y) const { return values_[index(x, y)]; }
    double& cell(int x, int y) { return values_[index(x, y)]; }

    // Sensor read at a continuous position. The position is rounded to the
    // nearest cell (half away from zero), then mapped by boundary mode:
    // wrapped when periodic, read-as-zero when walled and out of bounds.
    // Obstacle cells read zero. The exposure weight of the cell applies.
    double sample_weighted(double x, double y) const {
        long ix = std::lround(x);
        long iy = std::lround(y);
        if (boundary_ == Boundary::periodic) {
            ix = wrap(ix, width_);
            iy = wrap(iy, height_);
        } else if (ix < 0 || ix >= width_ || iy < 0 || iy >= height_) {
            return 0.0;
        }
        const int cx = static_cast<int>(ix);
        const int cy = static_cast<int>(iy);
        if (is_obstacle(cx, cy)) return 0.0;
        const double v = values_[index(cx, cy)];
        return masks_ ? v * exposure_weight(*masks_, weights_, cx, cy) : v;
    }

    void diffuse_and_decay(double decay) {
        // separable 3x3 box: horizontal triple sums into scratch, then
        // vertical triple sums back into values
        const int w = width_, h = height_;
        const bool wraps = boundary_ == Boundary::periodic;
        for (int y = 0; y < h; ++y) {
            const double* row = &values_[static_cast<std::size_t>(y) * w];
            double* out = &scratch_[static_cast<std::size_t>(y) * w];
            if (w == 1) {
                out[0] = wraps ? row[0] * 3.0 : row[0];
                continue;
            }
            out[0] = row[0] + row[1] + (wraps ? row[w - 1] : 0.0);
            for (int x = 1; x < w - 1; ++x)
                out[x] = row[x - 1] + row[x] + row[x + 1];
            out[w - 1] = row[w - 2] + row[w - 1] + (wraps ? row[0] : 0.0);
        }
        const double k = (1.0 - decay) / 9.0;
        for (int y = 0; y < h; ++y) {
            const double* mid = &scratch_[static_cast<std::size_t>(y) * w];
            const double* up = (y > 0) ? mid - w : (wraps ? &scratch_[static_cast<std::size_t>(h - 1) * w] : nullptr);
            const double* dn = (y < h - 1) ? mid + w : (wraps ? &scratch_[0] : nullptr);
            double* out = &values_[static_cast<std::size_t>(y) * w];
            if (up && dn) {
                for (int x = 0; x < w; ++x) out[x] = (up[x] + mid[x] + dn[x]) * k;
            } else if (up) {
                for (int x = 0; x < w; ++x) out[x] = (up[x] + mid[x]) * k;
            } else if (dn) {
                for (int x = 0; x < w; ++x) out[x] = (mid[x] + dn[x]) * k;
            } else {
                for (int x = 0; x < w; ++x) out[x] = mid[x] * k;
            }
        }
        if (masks_) {
            const auto& obstacle = masks_->obstacle;
            for (std::size_t i = 0; i < values_.size(); ++i)
                if (obstacle[i]) values_[i] = 0.0;
        }
    }

    double total_mass() const {
        double sum = 0.0;
        for (double v : values_) sum += v;
        return sum;
    }

    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }

    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * width_ + x;
    }

private:
    static long wrap(long i, int n) {
        i %= n;
        return i < 0 ? i + n : i;
    }

    int width_ = 0, height_ = 0;
    Boundary boundary_ = Boundary::periodic;
    const EnvironmentMasks* masks_ = nullptr;
    ExposureWeights weights_{};
    std::vector<double> values_;
    std::vector<double> scratch_;
};

} // namespace physarum
