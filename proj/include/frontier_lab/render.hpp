#pragma once

#include <string>

#include "frontier_lab/grid.hpp"
#include "frontier_lab/planner.hpp"

namespace frontier_lab {

// Frame palette: white = occupied, black = unexplored unoccupied,
// green = explored unoccupied, blue = agent.
struct Rgb {
    int r = 0, g = 0, b = 0;
    friend bool operator==(const Rgb&, const Rgb&) = default;
};
inline constexpr Rgb kOccupiedColor{255, 255, 255};
inline constexpr Rgb kUnexploredColor{0, 0, 0};
inline constexpr Rgb kExploredColor{0, 255, 0};
inline constexpr Rgb kAgentColor{0, 0, 255};

// One plain-PPM (P3) pixel map of the episode state.
std::string render_ppm(const GridMap& true_map, const Mask& mask, Cell agent);

// Replays a trace against its map and writes frame_000000.ppm (initial state)
// plus one frame after each planning step into out_dir. Refuses to render a
// trace whose header hash does not match the map file. Returns the frame
// count.
int render_frames(const std::string& trace_path, const std::string& map_path,
                  const std::string& out_dir);

} // namespace frontier_lab
