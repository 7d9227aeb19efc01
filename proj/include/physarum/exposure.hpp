#pragma once

// Per-cell exposure layers and the sensed-value weighting they induce.
//
// Light exposure scales sensed trail by a factor in [0, 1] (values look
// dimmer inside illuminated regions, so particles drift out of them).
// Repellent exposure scales by a factor in [-1, 0], flipping the sign of
// whatever is sensed there. A cell under both layers uses the product.
// Weighting applies at the sensor only; stored trail values are untouched.

#include "physarum/errors.hpp"
#include "physarum/grid.hpp"

namespace physarum {

struct ExposureWeights {
    double light = 0.2;      // in [0, 1]
    double repellent = -0.2; // in [-1, 0]
};

inline void validate(const ExposureWeights& w) {
    if (!(w.light >= 0.0 && w.light <= 1.0))
        throw ValidationError("exposure: light weight must lie in [0, 1]");
    if (!(w.repellent >= -1.0 && w.repellent <= 0.0))
        throw ValidationError("exposure: repellent weight must lie in [-1, 0]");
}

struct EnvironmentMasks {
    BinaryMask obstacle;
    BinaryMask light;
    BinaryMask repellent;

    EnvironmentMasks() = default;
    EnvironmentMasks(int width, int height)
        : obstacle(width, height, 0),
          light(width, height, 0),
          repellent(width, height, 0) {}
};

inline double exposure_weight(const EnvironmentMasks& masks,
                              const ExposureWeights& weights,
                              int x, int y) {
    double w = 1.0;
    const std::size_t i = masks.light.index(x, y);
    if (masks.light[i]) w *= weights.light;
    if (masks.repellent[i]) w *= weights.repellent;
    return w;
}

} // namespace physarum
