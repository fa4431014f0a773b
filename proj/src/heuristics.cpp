#include "frontier_lab/heuristics.hpp"

#include <stdexcept>

#include "frontier_lab/kernels.hpp"

namespace frontier_lab {

std::vector<FilterSpec> default_filter_bank() {
    return {{5, 24}, {7, 47}, {9, 78}};
}

int h1_info_gain(const Mask& mask, const Mask& temp_mask) {
    if (mask.size() != temp_mask.size())
        throw std::invalid_argument("h1_info_gain: mask size mismatch");
    // masks are {0,1}, so the absolute-difference sum is the differing count
    return static_cast<int>(kernels::diff_count(mask.data(), temp_mask.data(), mask.cell_count()));
}

int h2_move_cost(const PathResult& path_result) {
    return path_result.length();
}

int h4_filters(const Mask& temp_mask, Cell fp, std::span<const FilterSpec> filters) {
    if (!temp_mask.in_bounds(fp)) throw std::invalid_argument("h4_filters: fp out of bounds");
    const int L = temp_mask.size();
    for (const FilterSpec& f : filters) {
        if (f.side < 3 || f.side % 2 == 0 || f.threshold < 1 || f.threshold > f.side * f.side - 1)
            throw std::invalid_argument("h4_filters: bad filter spec");
        const int half = f.side / 2;
        int sum = 0;
        for (int dr = -half; dr <= half; ++dr) {
            for (int dc = -half; dc <= half; ++dc) {
                if (dr == 0 && dc == 0) continue; // central zero
                const int r = fp.r + dr, c = fp.c + dc;
                if (r < 0 || r >= L || c < 0 || c >= L) continue; // OOB = unexplored
                sum += temp_mask.at(r, c);
            }
        }
        if (sum >= f.threshold) return 1;
    }
    return 0;
}

double combine(double h1, double h2, double h3, double h4, const HeuristicConfig& cfg) {
    return cfg.alpha * h1 - cfg.beta * h2 + cfg.gamma * h3 + cfg.delta * h4;
}

} // namespace frontier_lab
