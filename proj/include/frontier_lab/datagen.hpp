#pragma once

#include <cstdint>
#include <vector>

#include "frontier_lab/net.hpp"
#include "frontier_lab/oracle.hpp"
#include "frontier_lab/planner.hpp"

namespace frontier_lab {

// Rolls the baseline planner (gamma and delta must be zero in `rollout`) over
// each map once and labels every frontier point evaluated along the way with
// the clairvoyant oracle. Records are shuffled with `seed`; the oracle tree
// seed of a record depends only on (seed, map, step, candidate), never on the
// look-ahead, so datasets of different depths share their trees.
Dataset generate_dataset(const std::vector<GridMap>& maps, const PlannerConfig& rollout,
                         const OracleConfig& oracle, const SensorConfig& sensor, uint64_t seed);

// One dataset per look-ahead depth 1..oracle.lookahead from a single pass:
// identical states and shuffle order, labels from the same trees truncated at
// each depth.
std::vector<Dataset> generate_dataset_nested(const std::vector<GridMap>& maps,
                                             const PlannerConfig& rollout,
                                             const OracleConfig& oracle,
                                             const SensorConfig& sensor, uint64_t seed);

} // namespace frontier_lab
