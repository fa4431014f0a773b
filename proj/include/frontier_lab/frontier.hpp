#pragma once

#include <vector>

#include "frontier_lab/grid.hpp"
#include "frontier_lab/rng.hpp"

namespace frontier_lab {

// A standing position on the explored/unexplored boundary: explored, free in
// the planner's map view, and 8-adjacent to at least one unexplored cell.
struct FrontierPoint {
    Cell loc;
    friend bool operator==(const FrontierPoint&, const FrontierPoint&) = default;
};

struct SamplerConfig {
    int max_points = 15; // N: cap on points handed to the evaluator
    int nearest = 12;    // k: closest points always kept, k <= N
};

// Frontier extraction. The Sobel edge response on the mask marks boundary
// candidates; candidates are then filtered to admissible standing positions.
// Balanced neighborhoods (thin diagonals and the like) can produce a zero
// Sobel response on a true boundary cell, so the admissibility sweep also
// rescues those; the result is exactly the set matching the definition above,
// in row-major order.
std::vector<FrontierPoint> sobel_frontiers(const Mask& mask, const GridMap& map_view);

// N/k subsampling: all points when |points| <= N, otherwise the k nearest to
// loc (Euclidean, ties by row-major order) followed by N-k points drawn
// uniformly without replacement from the remainder.
std::vector<FrontierPoint> sample_frontiers(const std::vector<FrontierPoint>& points, Cell loc,
                                            const SamplerConfig& cfg, SplitMix64& rng);

} // namespace frontier_lab
