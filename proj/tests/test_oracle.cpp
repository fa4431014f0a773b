#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "frontier_lab/astar.hpp"
#include "frontier_lab/datagen.hpp"
#include "frontier_lab/env.hpp"
#include "frontier_lab/heuristics.hpp"
#include "frontier_lab/oracle.hpp"

using namespace frontier_lab;

namespace {

const SensorConfig kSensor{3, true};

// exhaustive one-step look-ahead: max info gain over every frontier point
double one_step_exhaustive(const GridMap& map, const Mask& mask, Cell loc) {
    double best = 0.0;
    for (const auto& fp : sobel_frontiers(mask, map)) {
        if (fp.loc == loc) continue;
        const auto path = a_star(map, mask, loc, fp.loc, kSensor);
        if (!path) continue;
        best = std::max(best, static_cast<double>(h1_info_gain(mask, path->temp_mask)));
    }
    return best;
}

Mask scans_at(const GridMap& map, std::initializer_list<Cell> locs) {
    Mask mask(map.size());
    for (Cell loc : locs) mask = scan(map, mask, loc, kSensor);
    return mask;
}

} // namespace

TEST_CASE("oracle: zero look-ahead and explored-out masks yield zero") {
    const GridMap map = generate_map(15, 0.1, 3);
    const Cell start = start_cell(map);
    const Mask mask = scans_at(map, {start});
    OracleConfig cfg;
    cfg.lookahead = 0;
    CHECK(oracle_label(map, mask, {start}, cfg, kSensor) == 0.0);

    cfg.lookahead = 2;
    CHECK(oracle_label(map, Mask(15, 1), {start}, cfg, kSensor) == 0.0);
}

TEST_CASE("oracle: any state with frontiers that reveal cells gets a positive label") {
    const GridMap map(15); // empty map
    const Mask mask = scans_at(map, {{7, 7}});
    OracleConfig cfg;
    CHECK(oracle_label(map, mask, {{7, 7}}, cfg, kSensor) > 0.0);
}

TEST_CASE("oracle: T=1 with an exhaustive cap equals brute-force enumeration") {
    for (int trial = 0; trial < 8; ++trial) {
        const GridMap map = generate_map(15, 0.15, 3000 + trial);
        const Cell start = start_cell(map);
        const Mask mask = scans_at(map, {start});
        OracleConfig cfg;
        cfg.lookahead = 1;
        cfg.branching = {100000}; // evaluate every frontier point
        const double label = oracle_label(map, mask, {start}, cfg, kSensor, trial);
        CHECK(label == one_step_exhaustive(map, mask, start));
    }
}

TEST_CASE("oracle: deeper look-ahead never loses value on the same tree") {
    for (int trial = 0; trial < 6; ++trial) {
        const GridMap map = generate_map(15, 0.12, 4000 + trial);
        const Cell start = start_cell(map);
        const Mask mask = scans_at(map, {start});
        OracleConfig cfg;
        cfg.lookahead = 3;
        cfg.branching = {8, 4, 2};
        const auto vals = oracle_values(map, mask, start, cfg, kSensor, trial);
        REQUIRE(vals.size() == 3);
        CHECK(vals[0] <= vals[1]);
        CHECK(vals[1] <= vals[2]);

        // truncated configs reuse the same samples: label(T) == vals[T-1]
        OracleConfig c1 = cfg;
        c1.lookahead = 1;
        CHECK(oracle_label(map, mask, {start}, c1, kSensor, trial) == vals[0]);
        OracleConfig c2 = cfg;
        c2.lookahead = 2;
        CHECK(oracle_label(map, mask, {start}, c2, kSensor, trial) == vals[1]);
    }
}

TEST_CASE("oracle: labels are deterministic per call seed") {
    const GridMap map = generate_map(20, 0.15, 5);
    const Cell start = start_cell(map);
    const Mask mask = scans_at(map, {start});
    OracleConfig cfg;
    cfg.lookahead = 2;
    CHECK(oracle_label(map, mask, {start}, cfg, kSensor, 7) ==
          oracle_label(map, mask, {start}, cfg, kSensor, 7));
}

TEST_CASE("generate_dataset: record count bound, label bounds, determinism") {
    const std::vector<GridMap> maps{generate_map(15, 0.1, 21)};
    PlannerConfig rollout;
    rollout.heuristic = {1, 15, 0, 0};
    rollout.sensor = kSensor;
    OracleConfig oracle;
    oracle.lookahead = 1;

    const Dataset ds = generate_dataset(maps, rollout, oracle, kSensor, 77);
    REQUIRE(ds.size() > 0);

    // the same rollout without recording bounds the record count by steps * N
    PlannerConfig replay = rollout;
    replay.seed = derive_seed(77, seed_stream::dataset, 0);
    const EpisodeResult ep = run_episode(maps[0], replay);
    CHECK(ds.size() <= ep.trace.size() * static_cast<size_t>(rollout.sampler.max_points));

    for (float y : ds.labels) {
        CHECK(y >= 0.0f);
        CHECK(y <= 15.0f * 15.0f);
    }

    const Dataset again = generate_dataset(maps, rollout, oracle, kSensor, 77);
    CHECK(again.states == ds.states);
    CHECK(again.labels == ds.labels);

    // bit-identical files from identical seeds
    const auto dir = std::filesystem::temp_directory_path() / "frontier_lab_dsgen_test";
    std::filesystem::create_directories(dir);
    write_dataset((dir / "a.bin").string(), ds);
    write_dataset((dir / "b.bin").string(), again);
    std::ifstream f1(dir / "a.bin", std::ios::binary), f2(dir / "b.bin", std::ios::binary);
    std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    CHECK(s1 == s2);
    std::filesystem::remove_all(dir);
}

TEST_CASE("generate_dataset_nested: shared states, nested labels") {
    const std::vector<GridMap> maps{generate_map(15, 0.1, 31)};
    PlannerConfig rollout;
    rollout.heuristic = {1, 15, 0, 0};
    rollout.sensor = kSensor;
    OracleConfig oracle;
    oracle.lookahead = 3;
    oracle.branching = {6, 3, 2};

    const auto nested = generate_dataset_nested(maps, rollout, oracle, kSensor, 13);
    REQUIRE(nested.size() == 3);
    CHECK(nested[0].states == nested[1].states);
    CHECK(nested[1].states == nested[2].states);
    for (size_t i = 0; i < nested[0].size(); ++i) {
        CHECK(nested[0].labels[i] <= nested[1].labels[i]);
        CHECK(nested[1].labels[i] <= nested[2].labels[i]);
    }

    // the single-depth entry point is the deepest slice
    const Dataset deep = generate_dataset(maps, rollout, oracle, kSensor, 13);
    CHECK(deep.labels == nested[2].labels);
}

TEST_CASE("generate_dataset rejects non-baseline rollouts") {
    const std::vector<GridMap> maps{generate_map(15, 0.1, 41)};
    PlannerConfig rollout;
    rollout.heuristic = {1, 12, 1, 20};
    OracleConfig oracle;
    CHECK_THROWS_AS(generate_dataset(maps, rollout, oracle, kSensor, 1), std::invalid_argument);
    CHECK_THROWS_AS(generate_dataset({}, PlannerConfig{}, oracle, kSensor, 1),
                    std::invalid_argument);
}
