#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "frontier_lab/bench.hpp"
#include "frontier_lab/rng.hpp"

using namespace frontier_lab;

namespace {

// reference implementations, written exactly from the formulas
double mu_reference(const std::vector<std::vector<long>>& steps) {
    double outer = 0.0;
    for (const auto& row : steps) {
        double inner = 0.0;
        for (long v : row) inner += static_cast<double>(v);
        outer += inner / static_cast<double>(row.size());
    }
    return outer / static_cast<double>(steps.size());
}

double sigma_reference(const std::vector<std::vector<long>>& steps) {
    const double mu = mu_reference(steps);
    double outer = 0.0;
    for (const auto& row : steps) {
        double inner = 0.0;
        for (long v : row) inner += static_cast<double>(v);
        inner /= static_cast<double>(row.size());
        outer += inner * inner;
    }
    return outer / static_cast<double>(steps.size()) - mu * mu;
}

BenchmarkConfig tiny_config() {
    BenchmarkConfig cfg;
    cfg.sizes = {20};
    cfg.maps_per_size = 2;
    cfg.episodes_per_map = 2;
    cfg.density = 0.15;
    cfg.suite_seed = 5;
    PlannerConfig baseline;
    baseline.heuristic = {1, 15, 0, 0};
    cfg.variants.push_back({"baseline", baseline});
    return cfg;
}

} // namespace

TEST_CASE("compute_mu: documented examples") {
    CHECK(compute_mu({{10}}) == 10.0);
    CHECK(compute_mu({{10, 20}, {30, 30}}) == 22.5);
    CHECK_THROWS_AS(compute_mu({}), std::invalid_argument);
}

TEST_CASE("compute_sigma: documented examples") {
    CHECK(compute_sigma({{7, 7}, {7, 7}}) == 0.0);
    CHECK(compute_sigma({{10, 20}, {30, 30}}) == 56.25);
}

TEST_CASE("mu and sigma match the reference on random matrices exactly") {
    SplitMix64 rng(31337);
    for (int trial = 0; trial < 500; ++trial) {
        const size_t rows = 1 + rng.below(8), cols = 1 + rng.below(8);
        std::vector<std::vector<long>> m(rows, std::vector<long>(cols));
        for (auto& row : m)
            for (auto& v : row) v = static_cast<long>(rng.below(5000));
        CHECK(compute_mu(m) == mu_reference(m));
        CHECK(compute_sigma(m) == sigma_reference(m));
        CHECK(compute_sigma(m) >= 0.0);
    }
}

TEST_CASE("compute_s: documented examples") {
    CHECK(compute_s(500, 500) == 0.0);
    CHECK(compute_s(691, 645) == doctest::Approx(6.66).epsilon(0.0016)); // 6.657...
    CHECK_THROWS_AS(compute_s(0, 10), std::invalid_argument);
}

TEST_CASE("run_benchmark: identical variants score S = 0 exactly") {
    BenchmarkConfig cfg = tiny_config();
    cfg.variants.push_back({"clone", cfg.variants[0].planner});
    const BenchmarkResult result = run_benchmark(cfg);
    REQUIRE(result.stats.size() == 2);
    CHECK(result.stats[0].s_vs_baseline == 0.0);
    CHECK(result.stats[1].s_vs_baseline == 0.0);
    CHECK(result.stats[0].mu == result.stats[1].mu);

    // paired discipline: same maps and episode seeds for both variants
    REQUIRE(result.rows.size() == 8);
    for (size_t i = 0; i < 4; ++i) {
        CHECK(result.rows[i].map_seed == result.rows[i + 4].map_seed);
        CHECK(result.rows[i].episode_seed == result.rows[i + 4].episode_seed);
        CHECK(result.rows[i].steps == result.rows[i + 4].steps);
    }
}

TEST_CASE("run_benchmark: doubling the episode count keeps the first half identical") {
    BenchmarkConfig cfg = tiny_config();
    const BenchmarkResult small_run = run_benchmark(cfg);
    BenchmarkConfig big = cfg;
    big.episodes_per_map = 4;
    const BenchmarkResult large_run = run_benchmark(big);
    for (int mi = 0; mi < 2; ++mi)
        for (int ei = 0; ei < 2; ++ei) {
            const auto& a = small_run.rows[mi * 2 + ei];
            const auto& b = large_run.rows[mi * 4 + ei];
            CHECK(a.episode_seed == b.episode_seed);
            CHECK(a.steps == b.steps);
        }
}

TEST_CASE("benchmark results round-trip through CSV and JSON") {
    const BenchmarkConfig cfg = tiny_config();
    const BenchmarkResult result = run_benchmark(cfg);
    const auto dir = std::filesystem::temp_directory_path() / "frontier_lab_bench_test";
    std::filesystem::create_directories(dir);
    const std::string csv = (dir / "results.csv").string();
    const std::string json_path = (dir / "summary.json").string();
    write_results_csv(csv, result);
    write_summary_json(json_path, cfg, result);
    const BenchmarkResult back = read_results(csv, json_path);
    CHECK(back == result);
    std::filesystem::remove_all(dir);
}

TEST_CASE("run_benchmark: budget overruns are recorded, not dropped") {
    BenchmarkConfig cfg = tiny_config();
    cfg.step_budget = 3;
    const BenchmarkResult result = run_benchmark(cfg);
    for (const auto& row : result.rows) {
        CHECK(row.steps <= 3);
        CHECK(!row.completed);
    }
}
