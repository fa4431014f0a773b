#include "frontier_lab/frontier.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "frontier_lab/kernels.hpp"

namespace frontier_lab {

namespace {

bool has_unexplored_8_neighbor(const Mask& mask, int r, int c) {
    const int L = mask.size();
    for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc) {
            if (dr == 0 && dc == 0) continue;
            const int rr = r + dr, cc = c + dc;
            if (rr < 0 || rr >= L || cc < 0 || cc >= L) continue;
            if (!mask.at(rr, cc)) return true;
        }
    }
    return false;
}

} // namespace

std::vector<FrontierPoint> sobel_frontiers(const Mask& mask, const GridMap& map_view) {
    if (mask.size() != map_view.size())
        throw std::invalid_argument("sobel_frontiers: mask/map size mismatch");
    const int L = mask.size();
    BinaryGrid edges(L);
    kernels::sobel_edges(mask.data(), L, edges.data());

    std::vector<FrontierPoint> out;
    for (int r = 0; r < L; ++r) {
        const bool border_row = r == 0 || r == L - 1;
        for (int c = 0; c < L; ++c) {
            if (!mask.at(r, c) || map_view.at(r, c)) continue;
            bool boundary;
            if (edges.at(r, c) && !border_row && c != 0 && c != L - 1) {
                // On an interior explored cell a nonzero response implies a
                // mixed 3x3 neighborhood, so the neighbor scan can be skipped.
                boundary = true;
            } else {
                // Covers border cells (zero padding fires on the map rim) and
                // the balanced patterns where the response misses a true
                // boundary cell.
                boundary = has_unexplored_8_neighbor(mask, r, c);
            }
            if (boundary) out.push_back(FrontierPoint{{r, c}});
        }
    }
    return out;
}

std::vector<FrontierPoint> sample_frontiers(const std::vector<FrontierPoint>& points, Cell loc,
                                            const SamplerConfig& cfg, SplitMix64& rng) {
    if (cfg.nearest > cfg.max_points || cfg.nearest < 0 || cfg.max_points <= 0)
        throw std::invalid_argument("sample_frontiers: need 0 <= k <= N, N > 0");
    const int n = static_cast<int>(points.size());
    if (n <= cfg.max_points) return points;

    std::vector<int> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const long da = euclid_sq(points[a].loc, loc);
        const long db = euclid_sq(points[b].loc, loc);
        if (da != db) return da < db;
        return points[a].loc < points[b].loc; // input is row-major ordered
    });

    std::vector<FrontierPoint> out;
    out.reserve(cfg.max_points);
    for (int i = 0; i < cfg.nearest; ++i) out.push_back(points[order[i]]);

    // partial Fisher-Yates over the remainder, in draw order
    std::vector<int> rest(order.begin() + cfg.nearest, order.end());
    const int extra = cfg.max_points - cfg.nearest;
    for (int i = 0; i < extra && i < static_cast<int>(rest.size()); ++i) {
        const size_t j = i + static_cast<size_t>(rng.below(rest.size() - i));
        std::swap(rest[i], rest[j]);
        out.push_back(points[rest[i]]);
    }
    return out;
}

} // namespace frontier_lab
