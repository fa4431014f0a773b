#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <deque>
#include <limits>

#include "frontier_lab/astar.hpp"
#include "frontier_lab/env.hpp"
#include "frontier_lab/rng.hpp"

using namespace frontier_lab;

namespace {

// plain breadth-first distances over the same traversability rule
std::vector<int> bfs_distances(const GridMap& view, Cell start) {
    const int L = view.size();
    std::vector<int> dist(static_cast<size_t>(L) * L, -1);
    std::deque<Cell> q{start};
    dist[view.index(start.r, start.c)] = 0;
    while (!q.empty()) {
        const Cell cur = q.front();
        q.pop_front();
        const int d = dist[view.index(cur.r, cur.c)];
        const int dr[4] = {-1, 1, 0, 0}, dc[4] = {0, 0, -1, 1};
        for (int k = 0; k < 4; ++k) {
            const Cell nb{cur.r + dr[k], cur.c + dc[k]};
            if (!view.in_bounds(nb) || view.at(nb)) continue;
            auto& dn = dist[view.index(nb.r, nb.c)];
            if (dn < 0) {
                dn = d + 1;
                q.push_back(nb);
            }
        }
    }
    return dist;
}

} // namespace

TEST_CASE("a_star: degenerate query returns an empty path and a start scan") {
    const GridMap view(10);
    Mask mask(10);
    const SensorConfig sensor{2, true};
    const auto res = a_star(view, mask, {5, 5}, {5, 5}, sensor);
    REQUIRE(res.has_value());
    CHECK(res->path.empty());
    CHECK(res->length() == 0);
    CHECK(res->temp_mask == scan(view, mask, {5, 5}, sensor));
}

TEST_CASE("a_star: open space meets the Manhattan bound") {
    const GridMap view(10);
    const auto res = a_star(view, Mask(10), {0, 0}, {0, 5}, {3, true});
    REQUIRE(res.has_value());
    CHECK(res->length() == 5);
    CHECK(res->path.back() == Cell{0, 5});
}

TEST_CASE("a_star: walls force a detour, unreachable goals return nullopt") {
    GridMap view(7);
    for (int r = 0; r < 6; ++r) view.set(r, 3, 1); // wall with a gap at the bottom
    const auto res = a_star(view, Mask(7), {0, 0}, {0, 6}, {2, true});
    REQUIRE(res.has_value());
    CHECK(res->length() == bfs_distances(view, {0, 0})[view.index(0, 6)]);

    for (int r = 0; r < 7; ++r) view.set(r, 3, 1); // seal the gap
    CHECK(!a_star(view, Mask(7), {0, 0}, {0, 6}, {2, true}).has_value());
}

TEST_CASE("a_star: path length equals BFS distance on random maps") {
    for (int trial = 0; trial < 30; ++trial) {
        const GridMap map = generate_map(20, 0.2, 7000 + trial);
        const Cell start = start_cell(map);
        const auto dist = bfs_distances(map, start);
        for (int r = 0; r < 20; ++r) {
            for (int c = 0; c < 20; ++c) {
                if (map.at(r, c)) continue;
                const auto res = a_star(map, Mask(20), start, {r, c}, {2, true});
                const int want = dist[map.index(r, c)];
                if (want < 0) {
                    CHECK(!res.has_value());
                } else {
                    REQUIRE(res.has_value());
                    CHECK(res->length() == want);
                }
            }
        }
    }
}

TEST_CASE("a_star: paths are 4-connected, avoid known walls, and are deterministic") {
    const GridMap map = generate_map(20, 0.2, 99);
    const Cell start = start_cell(map);
    const auto a = a_star(map, Mask(20), start, {0, 0}, {3, true});
    const auto b = a_star(map, Mask(20), start, {0, 0}, {3, true});
    if (!a.has_value()) {
        CHECK(!b.has_value());
        return;
    }
    CHECK(a->path == b->path);
    Cell prev = start;
    for (Cell c : a->path) {
        CHECK(manhattan(prev, c) == 1);
        CHECK(map.at(c) == 0);
        prev = c;
    }
}

TEST_CASE("a_star: temp_mask grows monotonically along the path and re-scan is idempotent") {
    const GridMap map = generate_map(20, 0.15, 4);
    const Cell start = start_cell(map);
    Mask mask = scan(map, Mask(20), start, {3, true});
    const auto res = a_star(map, mask, start, {1, 1}, {3, true});
    if (!res.has_value()) return;
    for (size_t i = 0; i < mask.cell_count(); ++i)
        CHECK(res->temp_mask.data()[i] >= mask.data()[i]);
    Mask again = res->temp_mask;
    again = scan(map, again, start, {3, true});
    for (Cell c : res->path) again = scan(map, again, c, {3, true});
    CHECK(again == res->temp_mask);
}

TEST_CASE("a_star: unexplored cells are traversable, occupied goals are not") {
    GridMap view(10);
    view.set(5, 5, 1);
    CHECK(!a_star(view, Mask(10), {0, 0}, {5, 5}, {2, true}).has_value());
    CHECK_THROWS_AS(a_star(view, Mask(10), {5, 5}, {0, 0}, {2, true}), std::invalid_argument);
}
