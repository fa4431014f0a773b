#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "frontier_lab/astar.hpp"
#include "frontier_lab/env.hpp"
#include "frontier_lab/frontier.hpp"
#include "frontier_lab/heuristics.hpp"
#include "frontier_lab/net.hpp"
#include "frontier_lab/oracle.hpp"

namespace frontier_lab {

struct PlannerConfig {
    HeuristicConfig heuristic;
    SamplerConfig sampler;
    SensorConfig sensor;
    std::vector<FilterSpec> filters = default_filter_bank();
    int state_window = 40; // d: window side for the H3 state
    std::shared_ptr<const ModelWeights> model;
    std::optional<OracleConfig> oracle_h3; // clairvoyant H3, diagnostic only
    uint64_t seed = 0;
    long step_budget = 0; // 0 = 50 * L^2

    // Exactly one H3 source may be active: gamma == 0, a model, or the
    // diagnostic oracle. Throws std::invalid_argument otherwise.
    void validate() const;
};

struct ScoreBreakdown {
    double h1 = 0, h2 = 0, h3 = 0, h4 = 0, total = 0;
};

struct PlanChoice {
    FrontierPoint chosen;
    PathResult best_path;
    ScoreBreakdown score;
};

// Every reachable frontier evaluated during one planning step, in sampling
// order. Consumed by the dataset generator.
struct EvaluatedFrontier {
    FrontierPoint fp;
    PathResult path;
    ScoreBreakdown score;
};

// One planning decision: extract frontiers, sample at most N, score each
// reachable one with H and return the argmax (ties keep the earliest point in
// sampling order; the running best starts at -infinity so no valid frontier
// can be rejected by initialization). Returns nullopt when no reachable
// frontier exists. true_map is read only in oracle-H3 mode. When `evaluated`
// is given it receives a copy of every scored candidate.
std::optional<PlanChoice> plan_step(const GridMap& map_view, const Mask& mask, Cell loc,
                                    const PlannerConfig& cfg, SplitMix64& rng,
                                    const GridMap* true_map = nullptr, uint64_t step_seed = 0,
                                    std::vector<EvaluatedFrontier>* evaluated = nullptr);

struct StepRecord {
    int index = 0;
    Cell loc;      // agent location at plan time
    Cell frontier; // chosen target
    ScoreBreakdown score;
    std::vector<Cell> traversed; // cells actually stepped on
    bool blocked = false;        // aborted on a newly revealed wall
};

struct EpisodeResult {
    long steps = 0;
    bool completed = false;       // every reachable free cell explored
    bool budget_exceeded = false; // stopped by the step budget instead
    Cell start;
    std::vector<StepRecord> trace;
    Mask final_mask;
};

// Algorithm main loop: plan, walk the chosen path one cell at a time
// (re-planning as soon as a newly revealed obstacle blocks the route),
// repeat until no reachable frontier remains or the budget runs out.
EpisodeResult run_episode(const GridMap& true_map, const PlannerConfig& cfg);

// True iff every free cell reachable from start (4-connected on the true
// map) is explored in mask.
bool coverage_complete(const GridMap& true_map, Cell start, const Mask& mask);

// JSON-lines episode trace: a header object (map hash, start, seed, config),
// one object per planning step, and an end object with the totals.
void write_trace(const std::string& path, const GridMap& true_map, const PlannerConfig& cfg,
                 const EpisodeResult& ep);

struct TraceFile {
    int size = 0;
    uint64_t map_hash = 0;
    Cell start;
    SensorConfig sensor;
    uint64_t seed = 0;
    long steps = 0;
    bool completed = false;
    bool budget_exceeded = false;
    std::vector<StepRecord> records;
};

TraceFile read_trace(const std::string& path);

} // namespace frontier_lab
