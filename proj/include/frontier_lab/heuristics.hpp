#pragma once

#include <span>
#include <vector>

#include "frontier_lab/astar.hpp"
#include "frontier_lab/frontier.hpp"
#include "frontier_lab/grid.hpp"

namespace frontier_lab {

// Coefficients of H = alpha*H1 - beta*H2 + gamma*H3 + delta*H4.
struct HeuristicConfig {
    double alpha = 1.0;
    double beta = 12.0;
    double gamma = 1.0;
    double delta = 20.0;
};

// Ring filter: an all-ones square kernel with a single central zero, paired
// with the explored-cell count needed to activate it.
struct FilterSpec {
    int side = 5;       // odd kernel side length
    int threshold = 24; // activation threshold, <= side*side - 1
};

// The default bank: 5x5/24, 7x7/47, 9x9/78.
std::vector<FilterSpec> default_filter_bank();

// Newly explored cell count between the current mask and the post-traversal
// mask. Throws on size mismatch.
int h1_info_gain(const Mask& mask, const Mask& temp_mask);

// Path length in grid steps.
int h2_move_cost(const PathResult& path_result);

// 1 when any filter, centered on the frontier point and summed against the
// post-traversal mask (out-of-bounds cells count as unexplored), reaches its
// threshold; 0 otherwise. Activation is >= threshold: the 5x5 kernel has 24
// ones and its threshold is 24, so a strict reading could never fire.
int h4_filters(const Mask& temp_mask, Cell fp, std::span<const FilterSpec> filters);

double combine(double h1, double h2, double h3, double h4, const HeuristicConfig& cfg);

} // namespace frontier_lab
