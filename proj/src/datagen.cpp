#include "frontier_lab/datagen.hpp"

#include <stdexcept>

#include "frontier_lab/common.hpp"
#include "frontier_lab/rng.hpp"

namespace frontier_lab {

namespace {

struct MapRecords {
    std::vector<float> states;
    std::vector<std::vector<float>> labels; // per depth
};

MapRecords record_map_rollout(const GridMap& map, const PlannerConfig& rollout,
                              const OracleConfig& oracle, const SensorConfig& sensor,
                              uint64_t map_seed) {
    const int L = map.size();
    const int depth = oracle.lookahead;
    const long budget = rollout.step_budget > 0 ? rollout.step_budget : 50L * L * L;

    MapRecords out;
    out.labels.resize(static_cast<size_t>(depth));

    PlannerConfig cfg = rollout;
    cfg.sensor = sensor;
    cfg.seed = map_seed;

    AgentState agent{start_cell(map), 0};
    Mask mask(L);
    mask = scan(map, mask, agent.loc, sensor);
    GridMap view(L);
    for (size_t i = 0; i < view.cell_count(); ++i)
        view.data()[i] = map.data()[i] & mask.data()[i];

    SplitMix64 rng(derive_seed(map_seed, seed_stream::episode, 0));
    std::vector<EvaluatedFrontier> evaluated;
    for (int step_idx = 0; agent.steps_taken < budget; ++step_idx) {
        evaluated.clear();
        auto choice = plan_step(view, mask, agent.loc, cfg, rng, nullptr, 0, &evaluated);
        if (!choice) break;

        const uint64_t step_seed = derive_seed(map_seed, seed_stream::oracle, step_idx);
        for (size_t ei = 0; ei < evaluated.size(); ++ei) {
            const auto& cand = evaluated[ei];
            const NetState st =
                extract_state(view, cand.path.temp_mask, cand.fp.loc, cfg.state_window);
            const auto vals = oracle_values(map, cand.path.temp_mask, cand.fp.loc, oracle, sensor,
                                            derive_seed(step_seed, 0, ei));
            const int unexplored = L * L - cand.path.temp_mask.count_ones();
            for (int t = 0; t < depth; ++t) {
                if (vals[t] < 0.0 || vals[t] > unexplored)
                    throw std::logic_error("oracle label out of bounds");
                out.labels[t].push_back(static_cast<float>(vals[t]));
            }
            out.states.insert(out.states.end(), st.data.begin(), st.data.end());
        }

        for (Cell next : choice->best_path.path) {
            if (view.at(next)) break;
            auto moved = move_agent(map, mask, agent, next, sensor);
            if (!moved) break;
            agent = moved->first;
            mask = std::move(moved->second);
            for (size_t i = 0; i < view.cell_count(); ++i)
                view.data()[i] = map.data()[i] & mask.data()[i];
            if (agent.steps_taken >= budget) break;
        }
    }
    return out;
}

} // namespace

std::vector<Dataset> generate_dataset_nested(const std::vector<GridMap>& maps,
                                             const PlannerConfig& rollout,
                                             const OracleConfig& oracle,
                                             const SensorConfig& sensor, uint64_t seed) {
    if (maps.empty()) throw std::invalid_argument("generate_dataset: need at least one map");
    if (rollout.heuristic.gamma != 0.0 || rollout.heuristic.delta != 0.0)
        throw std::invalid_argument("generate_dataset: rollouts use the baseline planner");
    oracle.validate();
    const int depth = oracle.lookahead;
    if (depth < 1) throw std::invalid_argument("generate_dataset: lookahead must be >= 1");

    // maps roll out in parallel; per-map buffers are concatenated in map
    // order, so the record stream is independent of scheduling
    std::vector<MapRecords> per_map(maps.size());
    parallel_for(maps.size(), [&](size_t mi) {
        per_map[mi] = record_map_rollout(maps[mi], rollout, oracle, sensor,
                                         derive_seed(seed, seed_stream::dataset, mi));
    });

    std::vector<float> states;
    std::vector<std::vector<float>> labels(static_cast<size_t>(depth));
    for (auto& mr : per_map) {
        states.insert(states.end(), mr.states.begin(), mr.states.end());
        for (int t = 0; t < depth; ++t)
            labels[t].insert(labels[t].end(), mr.labels[t].begin(), mr.labels[t].end());
        mr = MapRecords{};
    }

    const size_t n = labels[0].size();
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    SplitMix64 shuffle_rng(derive_seed(seed, seed_stream::shuffle, 0));
    shuffle(order, shuffle_rng);

    std::vector<Dataset> out(static_cast<size_t>(depth));
    for (int t = 0; t < depth; ++t) {
        Dataset& ds = out[t];
        ds.states.resize(n * NetState::kValues);
        ds.labels.resize(n);
        for (size_t i = 0; i < n; ++i) {
            const size_t src = order[i];
            std::copy_n(states.data() + src * NetState::kValues, NetState::kValues,
                        ds.states.data() + i * NetState::kValues);
            ds.labels[i] = labels[t][src];
        }
    }
    return out;
}

Dataset generate_dataset(const std::vector<GridMap>& maps, const PlannerConfig& rollout,
                         const OracleConfig& oracle, const SensorConfig& sensor, uint64_t seed) {
    auto nested = generate_dataset_nested(maps, rollout, oracle, sensor, seed);
    return std::move(nested.back());
}

} // namespace frontier_lab
