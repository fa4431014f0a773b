#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "frontier_lab/env.hpp"
#include "frontier_lab/frontier.hpp"

using namespace frontier_lab;

namespace {

// boundary definition, computed by direct neighborhood scan
std::vector<FrontierPoint> brute_force_frontiers(const Mask& mask, const GridMap& view) {
    std::vector<FrontierPoint> out;
    const int L = mask.size();
    for (int r = 0; r < L; ++r) {
        for (int c = 0; c < L; ++c) {
            if (!mask.at(r, c) || view.at(r, c)) continue;
            bool boundary = false;
            for (int dr = -1; dr <= 1 && !boundary; ++dr)
                for (int dc = -1; dc <= 1 && !boundary; ++dc) {
                    if (dr == 0 && dc == 0) continue;
                    const int rr = r + dr, cc = c + dc;
                    if (rr >= 0 && rr < L && cc >= 0 && cc < L && !mask.at(rr, cc))
                        boundary = true;
                }
            if (boundary) out.push_back({{r, c}});
        }
    }
    return out;
}

Mask random_scan_mask(const GridMap& map, int scans, uint64_t seed) {
    SplitMix64 rng(seed);
    Mask mask(map.size());
    int done = 0;
    while (done < scans) {
        const Cell loc{static_cast<int>(rng.below(map.size())),
                       static_cast<int>(rng.below(map.size()))};
        if (map.at(loc)) continue;
        mask = scan(map, mask, loc, {3, true});
        ++done;
    }
    return mask;
}

} // namespace

TEST_CASE("sobel_frontiers: trivial masks yield no frontier") {
    const GridMap view(8);
    CHECK(sobel_frontiers(Mask(8, 1), view).empty()); // everything explored
    CHECK(sobel_frontiers(Mask(8, 0), view).empty()); // nothing explored
}

TEST_CASE("sobel_frontiers: half-explored stripe puts the frontier on its last column") {
    Mask mask(6);
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c <= 2; ++c) mask.set(r, c, 1);
    const auto fps = sobel_frontiers(mask, GridMap(6));
    REQUIRE(fps.size() == 6);
    for (int r = 0; r < 6; ++r) CHECK(fps[r].loc == Cell{r, 2});
}

TEST_CASE("sobel_frontiers: occupied cells are never frontier points") {
    Mask mask(6, 1);
    mask.set(3, 3, 0);
    GridMap view(6);
    view.set(3, 2, 1); // wall next to the unexplored pocket
    const auto fps = sobel_frontiers(mask, view);
    for (const auto& fp : fps) CHECK(view.at(fp.loc) == 0);
    CHECK(std::none_of(fps.begin(), fps.end(),
                       [](const FrontierPoint& p) { return p.loc == Cell{3, 2}; }));
}

TEST_CASE("sobel_frontiers equals the boundary definition on scan-built masks") {
    for (int trial = 0; trial < 200; ++trial) {
        const GridMap map = generate_map(20, 0.15, 900 + trial);
        const Mask mask = random_scan_mask(map, 1 + trial % 10, 40 + trial);
        GridMap view(20);
        for (size_t i = 0; i < view.cell_count(); ++i)
            view.data()[i] = map.data()[i] & mask.data()[i];
        CHECK(sobel_frontiers(mask, view) == brute_force_frontiers(mask, view));
    }
}

TEST_CASE("sobel_frontiers equals the boundary definition even on adversarial noise masks") {
    // per-cell noise can build balanced neighborhoods with a zero Sobel
    // response; the admissibility sweep must still find those cells
    SplitMix64 rng(4242);
    for (int trial = 0; trial < 100; ++trial) {
        Mask mask(20);
        for (size_t i = 0; i < mask.cell_count(); ++i)
            mask.data()[i] = static_cast<uint8_t>(rng.below(2));
        const GridMap view(20);
        CHECK(sobel_frontiers(mask, view) == brute_force_frontiers(mask, view));
    }
}

TEST_CASE("sample_frontiers: small sets pass through in order") {
    std::vector<FrontierPoint> pts;
    for (int i = 0; i < 10; ++i) pts.push_back({{i, 2 * i}});
    SplitMix64 rng(5);
    const auto out = sample_frontiers(pts, {0, 0}, {15, 12}, rng);
    CHECK(out == pts);
}

TEST_CASE("sample_frontiers: keeps the k nearest and samples the rest") {
    std::vector<FrontierPoint> pts;
    for (int i = 0; i < 40; ++i) pts.push_back({{i / 8, (i % 8) * 3}});
    const Cell loc{2, 10};
    const SamplerConfig cfg{15, 12};
    SplitMix64 rng(17);
    const auto out = sample_frontiers(pts, loc, cfg, rng);
    REQUIRE(out.size() == 15);

    // sort oracle for the nearest set
    auto sorted = pts;
    std::sort(sorted.begin(), sorted.end(), [&](const FrontierPoint& a, const FrontierPoint& b) {
        const long da = euclid_sq(a.loc, loc), db = euclid_sq(b.loc, loc);
        if (da != db) return da < db;
        return a.loc < b.loc;
    });
    for (int i = 0; i < cfg.nearest; ++i) {
        CHECK(std::find(out.begin(), out.end(), sorted[i]) != out.end());
        CHECK(out[i] == sorted[i]); // nearest come first, in distance order
    }

    // no duplicates, nothing invented
    std::set<std::pair<int, int>> seen;
    for (const auto& p : out) {
        CHECK(std::find(pts.begin(), pts.end(), p) != pts.end());
        CHECK(seen.insert({p.loc.r, p.loc.c}).second);
    }
}

TEST_CASE("sample_frontiers: same seed, same sample; different seed may differ") {
    std::vector<FrontierPoint> pts;
    for (int i = 0; i < 60; ++i) pts.push_back({{i % 12, i / 12 + 7}});
    SplitMix64 r1(33), r2(33);
    const auto a = sample_frontiers(pts, {0, 0}, {15, 12}, r1);
    const auto b = sample_frontiers(pts, {0, 0}, {15, 12}, r2);
    CHECK(a == b);
}

TEST_CASE("sample_frontiers rejects k > N") {
    std::vector<FrontierPoint> pts{{{1, 1}}};
    SplitMix64 rng(1);
    CHECK_THROWS_AS(sample_frontiers(pts, {0, 0}, {5, 6}, rng), std::invalid_argument);
}
