#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "frontier_lab/planner.hpp"

using namespace frontier_lab;

namespace {

PlannerConfig baseline_config(uint64_t seed = 1) {
    PlannerConfig cfg;
    cfg.heuristic = {1, 15, 0, 0};
    cfg.seed = seed;
    return cfg;
}

// corridor world: row 1 free at columns 1..13 of a 17x17 grid, walls
// elsewhere; mask explored except the two corridor ends
struct CorridorWorld {
    GridMap map{17, 1};
    Mask mask{17, 1};
    GridMap view{17};

    CorridorWorld() {
        for (int c = 1; c <= 15; ++c) map.set(1, c, 0);
        mask.set(1, 1, 0);
        mask.set(1, 15, 0);
        for (size_t i = 0; i < view.cell_count(); ++i)
            view.data()[i] = map.data()[i] & mask.data()[i];
    }
};

} // namespace

TEST_CASE("plan_step: fully explored mask means done") {
    GridMap view(12);
    Mask mask(12, 1);
    SplitMix64 rng(1);
    CHECK(!plan_step(view, mask, {6, 6}, baseline_config(), rng).has_value());
}

TEST_CASE("plan_step: a single reachable frontier is chosen regardless of score") {
    CorridorWorld w;
    w.mask.set(1, 15, 1); // only the left end remains unexplored
    PlannerConfig cfg = baseline_config();
    cfg.heuristic.beta = 1e9; // terrible score, still the only option
    SplitMix64 rng(2);
    const auto choice = plan_step(w.view, w.mask, {1, 8}, cfg, rng);
    REQUIRE(choice.has_value());
    CHECK(choice->chosen.loc == Cell{1, 2});
}

TEST_CASE("plan_step: baseline 1:15 prefers the shorter of two equal-gain frontiers") {
    CorridorWorld w;
    // agent at (1,5): frontier (1,2) at distance 3, frontier (1,14) at 9,
    // each revealing exactly one corridor end cell
    PlannerConfig cfg = baseline_config();
    cfg.sensor = {1, true};
    SplitMix64 rng(3);
    const auto choice = plan_step(w.view, w.mask, {1, 5}, cfg, rng);
    REQUIRE(choice.has_value());
    CHECK(choice->chosen.loc == Cell{1, 2});
    CHECK(choice->score.h1 == 1);
    CHECK(choice->score.h2 == 3);
    CHECK(choice->score.total == 1 - 15 * 3);
}

TEST_CASE("plan_step: scores below -L^2 are still accepted (running best starts at -inf)") {
    CorridorWorld w;
    PlannerConfig cfg = baseline_config();
    cfg.sensor = {1, true};
    cfg.heuristic.beta = 1e6; // every H far below -L^2 = -289
    SplitMix64 rng(4);
    const auto choice = plan_step(w.view, w.mask, {1, 5}, cfg, rng);
    REQUIRE(choice.has_value());
    CHECK(choice->score.total < -17.0 * 17.0);
}

TEST_CASE("plan_step validates its inputs and config") {
    GridMap view(10);
    Mask mask(10, 1);
    SplitMix64 rng(5);
    PlannerConfig cfg = baseline_config();
    CHECK_THROWS_AS(plan_step(view, Mask(10), {5, 5}, cfg, rng), std::invalid_argument);

    PlannerConfig two_sources = baseline_config();
    two_sources.heuristic.gamma = 1.0; // gamma active but no model/oracle
    CHECK_THROWS_AS(plan_step(view, mask, {5, 5}, two_sources, rng), std::invalid_argument);
}

TEST_CASE("run_episode: a 5x5 empty map is covered by the initial scan") {
    const GridMap map(5); // radius 3 from the center reaches every cell
    const EpisodeResult ep = run_episode(map, baseline_config());
    CHECK(ep.completed);
    CHECK(ep.steps <= 8);
    CHECK(ep.budget_exceeded == false);
}

TEST_CASE("run_episode: single free cell completes with zero steps") {
    GridMap map(11, 1);
    map.set(5, 5, 0);
    const EpisodeResult ep = run_episode(map, baseline_config());
    CHECK(ep.completed);
    CHECK(ep.steps == 0);
    CHECK(ep.trace.empty());
}

TEST_CASE("run_episode: identical seeds give identical traces") {
    const GridMap map = generate_map(20, 0.15, 8);
    const EpisodeResult a = run_episode(map, baseline_config(42));
    const EpisodeResult b = run_episode(map, baseline_config(42));
    CHECK(a.steps == b.steps);
    CHECK(a.completed == b.completed);
    REQUIRE(a.trace.size() == b.trace.size());
    for (size_t i = 0; i < a.trace.size(); ++i) {
        CHECK(a.trace[i].frontier == b.trace[i].frontier);
        CHECK(a.trace[i].traversed == b.trace[i].traversed);
        CHECK(a.trace[i].score.total == b.trace[i].score.total);
    }
}

TEST_CASE("run_episode: coverage soundness and per-iteration progress on random maps") {
    for (int trial = 0; trial < 10; ++trial) {
        const GridMap map = generate_map(20, 0.2, 600 + trial);
        const EpisodeResult ep = run_episode(map, baseline_config(trial));
        CHECK(ep.completed);
        CHECK(coverage_complete(map, ep.start, ep.final_mask));

        // replay: explored count strictly grows at every planning step
        Mask mask(20);
        mask = scan(map, mask, ep.start, SensorConfig{});
        int prev = mask.count_ones();
        for (const auto& rec : ep.trace) {
            for (Cell c : rec.traversed) mask = scan(map, mask, c, SensorConfig{});
            const int now = mask.count_ones();
            CHECK(now > prev);
            prev = now;
        }
        CHECK(mask == ep.final_mask);
    }
}

TEST_CASE("run_episode: scaling all coefficients leaves the chosen frontiers unchanged") {
    const GridMap map = generate_map(20, 0.18, 9);
    PlannerConfig a = baseline_config(11);
    a.heuristic = {1, 15, 0, 20};
    PlannerConfig b = a;
    b.heuristic = {3.5, 52.5, 0, 70};
    const EpisodeResult ea = run_episode(map, a);
    const EpisodeResult eb = run_episode(map, b);
    REQUIRE(ea.trace.size() == eb.trace.size());
    for (size_t i = 0; i < ea.trace.size(); ++i) {
        CHECK(ea.trace[i].frontier == eb.trace[i].frontier);
        CHECK(ea.trace[i].traversed == eb.trace[i].traversed);
    }
    CHECK(ea.steps == eb.steps);
}

TEST_CASE("run_episode: step budget stops and flags an episode") {
    const GridMap map = generate_map(30, 0.15, 10);
    PlannerConfig cfg = baseline_config(1);
    cfg.step_budget = 5;
    const EpisodeResult ep = run_episode(map, cfg);
    CHECK(!ep.completed);
    CHECK(ep.budget_exceeded);
    CHECK(ep.steps <= 5);
}

TEST_CASE("run_episode: diagnostic oracle H3 mode works end to end") {
    const GridMap map = generate_map(15, 0.12, 12);
    PlannerConfig cfg;
    cfg.heuristic = {1, 12, 1, 0};
    OracleConfig oc;
    oc.lookahead = 1;
    oc.branching = {5};
    cfg.oracle_h3 = oc;
    cfg.seed = 3;
    const EpisodeResult ep = run_episode(map, cfg);
    CHECK(ep.completed);
    bool saw_h3 = false;
    for (const auto& rec : ep.trace) saw_h3 |= rec.score.h3 > 0;
    CHECK(saw_h3);
}

TEST_CASE("trace files round-trip") {
    const GridMap map = generate_map(15, 0.1, 44);
    PlannerConfig cfg = baseline_config(21);
    const EpisodeResult ep = run_episode(map, cfg);

    const auto dir = std::filesystem::temp_directory_path() / "frontier_lab_trace_test";
    std::filesystem::create_directories(dir);
    const std::string path = (dir / "ep.jsonl").string();
    write_trace(path, map, cfg, ep);

    const TraceFile tf = read_trace(path);
    CHECK(tf.size == 15);
    CHECK(tf.map_hash == grid_hash(map));
    CHECK(tf.start == ep.start);
    CHECK(tf.seed == 21);
    CHECK(tf.steps == ep.steps);
    CHECK(tf.completed == ep.completed);
    REQUIRE(tf.records.size() == ep.trace.size());
    for (size_t i = 0; i < tf.records.size(); ++i) {
        CHECK(tf.records[i].frontier == ep.trace[i].frontier);
        CHECK(tf.records[i].traversed == ep.trace[i].traversed);
        CHECK(tf.records[i].score.h1 == ep.trace[i].score.h1);
        CHECK(tf.records[i].score.total == ep.trace[i].score.total);
    }

    // identical seeds produce byte-identical trace files
    const std::string path2 = (dir / "ep2.jsonl").string();
    write_trace(path2, map, cfg, run_episode(map, cfg));
    std::ifstream f1(path, std::ios::binary), f2(path2, std::ios::binary);
    std::string s1((std::istreambuf_iterator<char>(f1)), std::istreambuf_iterator<char>());
    std::string s2((std::istreambuf_iterator<char>(f2)), std::istreambuf_iterator<char>());
    CHECK(s1 == s2);
    std::filesystem::remove_all(dir);
}
