#pragma once

#include <optional>
#include <vector>

#include "frontier_lab/env.hpp"
#include "frontier_lab/grid.hpp"

namespace frontier_lab {

// Shortest 4-connected path plus the mask the agent would hold after walking
// it. The path starts at the cell after `start` and ends at the goal; its
// length is the move cost.
struct PathResult {
    std::vector<Cell> path;
    Mask temp_mask;
    int length() const { return static_cast<int>(path.size()); }
};

// A* over the planner's map view: a cell is traversable iff it is not marked
// occupied, so unexplored cells count as free. Manhattan heuristic; ties are
// broken by lower f, then lower h, then row-major cell order, which makes the
// returned path a pure function of the inputs. temp_mask is the input mask
// unioned with a scan at the start and at every path cell in order (occlusion
// judged against the map view, since hidden walls are unknown at plan time).
// Returns nullopt when no traversable path exists.
std::optional<PathResult> a_star(const GridMap& map_view, const Mask& mask, Cell start, Cell goal,
                                 const SensorConfig& sensor);

} // namespace frontier_lab
