#pragma once

#include <compare>
#include <cstdint>
#include <cstdlib>

namespace frontier_lab {

// Grid coordinate, row-major ordering. Row 0 is the top of the map.
struct Cell {
    int r = 0;
    int c = 0;

    friend bool operator==(const Cell&, const Cell&) = default;
    // row-major order, used as the deterministic tie-break everywhere
    friend auto operator<=>(const Cell& a, const Cell& b) {
        if (auto cmp = a.r <=> b.r; cmp != 0) return cmp;
        return a.c <=> b.c;
    }
};

inline int manhattan(Cell a, Cell b) {
    return std::abs(a.r - b.r) + std::abs(a.c - b.c);
}

inline long euclid_sq(Cell a, Cell b) {
    const long dr = a.r - b.r;
    const long dc = a.c - b.c;
    return dr * dr + dc * dc;
}

} // namespace frontier_lab
