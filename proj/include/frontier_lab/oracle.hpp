#pragma once

#include <cstdint>
#include <vector>

#include "frontier_lab/env.hpp"
#include "frontier_lab/frontier.hpp"
#include "frontier_lab/grid.hpp"

namespace frontier_lab {

// Clairvoyant look-ahead. Labels are computed on the true map: child
// expansions route and scan against real occupancy, so the value is the
// future return actually achievable from a state, not an estimate.
//
// Three readings of "future return over T selections" are supported:
//   max    - best achievable summed gain over any sampled selection chain
//            (the default)
//   mean   - average over the sampled tree
//   policy - gains realized when the base planner itself (alpha*H1 -
//            beta*H2, full knowledge) picks each selection; cost-aware,
//            kept as a study option because the cost-blind readings reward
//            frontiers whose next hop merely sweeps a long path
struct OracleConfig {
    enum class Aggregate { max, mean, policy };

    int lookahead = 1;                       // T, in frontier selections
    std::vector<int> branching = {15, 5, 3}; // per-depth sampling caps
    int nearest = 12;                        // k of the per-depth N/k sampler
    uint64_t rng_seed = 0;
    Aggregate aggregate = Aggregate::max;
    double policy_alpha = 1.0; // scoring of the rolled-out planner in policy mode
    double policy_beta = 15.0;

    // cap for tree depth t (0-based); the last entry repeats past the end
    int branching_at(int depth) const;
    void validate() const;
};

// Values for every depth 1..T from the state (agent at fp, mask = temp_mask):
// out[t-1] = max over sampled child chains of the summed info gain of t
// future selections. Child sampling depends only on (seed, path through the
// tree), so a depth-T tree reuses the depth-(T-1) tree's samples and
// out[t] >= out[t-1] holds by construction.
std::vector<double> oracle_values(const GridMap& true_map, const Mask& temp_mask, Cell fp,
                                  const OracleConfig& cfg, const SensorConfig& sensor,
                                  uint64_t call_seed = 0);

// The depth-T value alone. Returns 0 when no frontier remains or T == 0.
double oracle_label(const GridMap& true_map, const Mask& temp_mask, const FrontierPoint& fp,
                    const OracleConfig& cfg, const SensorConfig& sensor, uint64_t call_seed = 0);

} // namespace frontier_lab
