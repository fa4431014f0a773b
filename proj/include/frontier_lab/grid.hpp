#pragma once

#include <cassert>
#include <cstdint>
#include <vector>

#include "frontier_lab/cell.hpp"

namespace frontier_lab {

// Square binary grid, row-major bytes. Used both as the occupancy map
// (1 = occupied) and as the exploration mask (1 = explored).
class BinaryGrid {
public:
    BinaryGrid() = default;
    explicit BinaryGrid(int size, uint8_t fill = 0)
        : size_(size), cells_(static_cast<size_t>(size) * size, fill) {
        assert(size > 0);
    }

    int size() const { return size_; }
    size_t cell_count() const { return cells_.size(); }

    bool in_bounds(Cell c) const {
        return c.r >= 0 && c.r < size_ && c.c >= 0 && c.c < size_;
    }

    uint8_t at(int r, int c) const { return cells_[index(r, c)]; }
    uint8_t at(Cell c) const { return at(c.r, c.c); }
    void set(int r, int c, uint8_t v) { cells_[index(r, c)] = v; }
    void set(Cell c, uint8_t v) { set(c.r, c.c, v); }

    const uint8_t* data() const { return cells_.data(); }
    uint8_t* data() { return cells_.data(); }
    const std::vector<uint8_t>& cells() const { return cells_; }

    size_t index(int r, int c) const {
        assert(r >= 0 && r < size_ && c >= 0 && c < size_);
        return static_cast<size_t>(r) * size_ + c;
    }

    int count_ones() const {
        int n = 0;
        for (uint8_t v : cells_) n += v;
        return n;
    }

    friend bool operator==(const BinaryGrid&, const BinaryGrid&) = default;

private:
    int size_ = 0;
    std::vector<uint8_t> cells_;
};

using GridMap = BinaryGrid; // 1 = occupied
using Mask = BinaryGrid;    // 1 = explored

} // namespace frontier_lab
