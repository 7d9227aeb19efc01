#pragma once

#include <cstdint>
#include <vector>

namespace physarum {

// Flat row-major 2D buffer. Indexing is unchecked in release builds; bounds
// policy lives with the callers (field, masks, occupancy).
template <typename T>
class Grid {
public:
    Grid() : width_(0), height_(0) {}
    Grid(int width, int height, T fill = T{})
        : width_(width), height_(height),
          cells_(static_cast<std::size_t>(width) * height, fill) {}

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return cells_.size(); }

    bool in_bounds(int x, int y) const {
        return x >= 0 && x < width_ && y >= 0 && y < height_;
    }

    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * width_ + x;
    }

    T& at(int x, int y) { return cells_[index(x, y)]; }
    const T& at(int x, int y) const { return cells_[index(x, y)]; }

    T& operator[](std::size_t i) { return cells_[i]; }
    const T& operator[](std::size_t i) const { return cells_[i]; }

    void fill(T value) { cells_.assign(cells_.size(), value); }

    T* data() { return cells_.data(); }
    const T* data() const { return cells_.data(); }

    bool operator==(const Grid&) const = default;

private:
    int width_, height_;
    std::vector<T> cells_;
};

using BinaryMask = Grid<std::uint8_t>;

inline int count_set(const BinaryMask& mask) {
    int n = 0;
    for (std::size_t i = 0; i < mask.size(); ++i) n += mask[i] ? 1 : 0;
    return n;
}

} // namespace physarum
