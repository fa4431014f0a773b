#include "frontier_lab/astar.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>

namespace frontier_lab {

namespace {

struct OpenEntry {
    int f;
    int h;
    int idx; // row-major cell index
    // priority_queue is a max-heap; invert so the smallest tuple pops first
    bool operator<(const OpenEntry& o) const {
        if (f != o.f) return f > o.f;
        if (h != o.h) return h > o.h;
        return idx > o.idx;
    }
};

} // namespace

std::optional<PathResult> a_star(const GridMap& map_view, const Mask& mask, Cell start, Cell goal,
                                 const SensorConfig& sensor) {
    const int L = map_view.size();
    if (mask.size() != L) throw std::invalid_argument("a_star: mask/map size mismatch");
    if (!map_view.in_bounds(start) || !map_view.in_bounds(goal))
        throw std::invalid_argument("a_star: start or goal out of bounds");
    if (map_view.at(start)) throw std::invalid_argument("a_star: start cell is occupied");
    if (map_view.at(goal)) return std::nullopt;

    auto finish = [&](const std::vector<Cell>& path) {
        Mask temp = scan(map_view, mask, start, sensor);
        for (Cell c : path) temp = scan(map_view, temp, c, sensor);
        return PathResult{path, std::move(temp)};
    };

    if (start == goal) return finish({});

    const int n = L * L;
    std::vector<int> g(n, std::numeric_limits<int>::max());
    std::vector<int> parent(n, -1);
    std::vector<uint8_t> closed(n, 0);
    auto idx_of = [L](Cell c) { return c.r * L + c.c; };

    std::priority_queue<OpenEntry> open;
    g[idx_of(start)] = 0;
    open.push({manhattan(start, goal), manhattan(start, goal), idx_of(start)});

    const int dr[4] = {-1, 1, 0, 0};
    const int dc[4] = {0, 0, -1, 1};

    while (!open.empty()) {
        const OpenEntry top = open.top();
        open.pop();
        if (closed[top.idx]) continue;
        closed[top.idx] = 1;
        const Cell cur{top.idx / L, top.idx % L};
        if (cur == goal) break;
        for (int k = 0; k < 4; ++k) {
            const Cell nb{cur.r + dr[k], cur.c + dc[k]};
            if (!map_view.in_bounds(nb) || map_view.at(nb)) continue;
            const int ni = idx_of(nb);
            if (closed[ni]) continue;
            const int ng = g[top.idx] + 1;
            if (ng < g[ni]) {
                g[ni] = ng;
                parent[ni] = top.idx;
                const int h = manhattan(nb, goal);
                open.push({ng + h, h, ni});
            }
        }
    }

    const int gi = idx_of(goal);
    if (g[gi] == std::numeric_limits<int>::max()) return std::nullopt;

    std::vector<Cell> path;
    for (int i = gi; i != idx_of(start); i = parent[i]) path.push_back({i / L, i % L});
    std::reverse(path.begin(), path.end());
    return finish(path);
}

} // namespace frontier_lab
