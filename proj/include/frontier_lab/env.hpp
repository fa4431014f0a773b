#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "frontier_lab/grid.hpp"

namespace frontier_lab {

struct SensorConfig {
    int radius = 3;        // Euclidean disc, in cells
    bool occlusion = true; // walls block line of sight when true
};

// Number of cells within Euclidean distance radius of the sensor origin,
// i.e. the revealed area of one unobstructed scan.
int sensor_disc_area(const SensorConfig& sensor);

struct AgentState {
    Cell loc;
    int steps_taken = 0;
};

struct MapGenError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Random occupancy map: axis-aligned rectangles with sides uniform in
// [1, size/10], placed uniformly until the occupied fraction reaches
// `density` or the attempt budget (10 * size) runs out. Same arguments,
// same map, bit for bit.
GridMap generate_map(int size, double density, uint64_t seed);

// Map center, shifted to the nearest free cell (Euclidean distance, then
// row-major) when the center is occupied.
Cell start_cell(const GridMap& map);

// Integer line drawing (Bresenham) from a to b, inclusive of both endpoints.
std::vector<Cell> bresenham_line(Cell a, Cell b);

// New mask with every cell within the sensor disc of loc revealed. With
// occlusion on, a cell is revealed only if no occupied cell lies strictly
// between loc and it along the Bresenham ray; the blocking wall cell itself
// is revealed. Output is always a superset of the input mask.
Mask scan(const GridMap& map, const Mask& mask, Cell loc, const SensorConfig& sensor);

// Attempts a one-cell move. Returns the new agent state and the mask after
// scanning from the target cell, or nullopt when the target is occupied
// (state unchanged; the caller records the discovered obstacle). The target
// must be 4-adjacent to the agent.
std::optional<std::pair<AgentState, Mask>> move_agent(const GridMap& map, const Mask& mask,
                                                      const AgentState& agent, Cell target,
                                                      const SensorConfig& sensor);

// Text map file: "L density seed" then L lines of L '0'/'1' characters.
// Serialization is canonical, so write(read(f)) == f byte for byte.
struct MapFile {
    GridMap map;
    double density = 0.0;
    uint64_t seed = 0;
};

std::string map_file_text(const MapFile& mf);
void write_map_file(const std::string& path, const MapFile& mf);
MapFile read_map_file(const std::string& path);

// Identity hash of the grid contents (size + cells), used to tie episode
// traces to the map they were produced on.
uint64_t grid_hash(const BinaryGrid& g);

} // namespace frontier_lab
