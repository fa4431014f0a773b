#include "frontier_lab/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "frontier_lab/astar.hpp"
#include "frontier_lab/heuristics.hpp"
#include "frontier_lab/rng.hpp"

namespace frontier_lab {

int OracleConfig::branching_at(int depth) const {
    if (branching.empty()) throw std::invalid_argument("oracle: empty branching list");
    const size_t i = std::min<size_t>(depth, branching.size() - 1);
    return branching[i];
}

void OracleConfig::validate() const {
    if (lookahead < 0) throw std::invalid_argument("oracle: lookahead must be >= 0");
    if (branching.empty()) throw std::invalid_argument("oracle: empty branching list");
    for (int b : branching)
        if (b < 1) throw std::invalid_argument("oracle: branching factors must be >= 1");
    if (nearest < 0) throw std::invalid_argument("oracle: nearest must be >= 0");
}

namespace {

// Best or average summed info gain for each remaining depth, rooted at
// (loc, mask).
std::vector<double> tree_values(const GridMap& true_map, const Mask& mask, Cell loc, int depth,
                                int lookahead, const OracleConfig& cfg, const SensorConfig& sensor,
                                uint64_t node_seed) {
    const int remaining = lookahead - depth;
    std::vector<double> vals(static_cast<size_t>(remaining), 0.0);
    if (remaining <= 0) return vals;

    auto frontiers = sobel_frontiers(mask, true_map);
    std::erase_if(frontiers, [&](const FrontierPoint& p) { return p.loc == loc; });
    if (frontiers.empty()) return vals;

    const int cap = cfg.branching_at(depth);
    const SamplerConfig sampler{cap, std::min(cfg.nearest, cap)};
    SplitMix64 rng(derive_seed(node_seed, seed_stream::sampler, depth));
    const auto children = sample_frontiers(frontiers, loc, sampler, rng);

    const bool mean = cfg.aggregate == OracleConfig::Aggregate::mean;
    std::vector<double> acc(static_cast<size_t>(remaining), 0.0);
    size_t reachable = 0;
    for (size_t ci = 0; ci < children.size(); ++ci) {
        const auto path = a_star(true_map, mask, loc, children[ci].loc, sensor);
        if (!path) continue; // walled-off pocket revealed by a lucky scan
        ++reachable;
        const double gain = h1_info_gain(mask, path->temp_mask);
        std::vector<double> child_vals;
        if (remaining > 1)
            child_vals =
                tree_values(true_map, path->temp_mask, children[ci].loc, depth + 1, lookahead, cfg,
                            sensor, derive_seed(node_seed, seed_stream::oracle, ci + 1));
        for (int t = 0; t < remaining; ++t) {
            const double total = gain + (t > 0 ? child_vals[t - 1] : 0.0);
            if (mean)
                acc[t] += total;
            else
                acc[t] = std::max(acc[t], total);
        }
    }
    if (reachable == 0) return vals;
    for (int t = 0; t < remaining; ++t)
        vals[t] = mean ? acc[t] / static_cast<double>(reachable) : acc[t];
    return vals;
}

// Gains realized by rolling the base planner forward on the true map.
std::vector<double> policy_values(const GridMap& true_map, Mask mask, Cell loc,
                                  const OracleConfig& cfg, const SensorConfig& sensor,
                                  uint64_t node_seed) {
    std::vector<double> vals(static_cast<size_t>(cfg.lookahead), 0.0);
    double total = 0.0;
    for (int depth = 0; depth < cfg.lookahead; ++depth) {
        auto frontiers = sobel_frontiers(mask, true_map);
        std::erase_if(frontiers, [&](const FrontierPoint& p) { return p.loc == loc; });
        if (frontiers.empty()) {
            for (int t = depth; t < cfg.lookahead; ++t) vals[t] = total;
            return vals;
        }
        const int cap = cfg.branching_at(depth);
        const SamplerConfig sampler{cap, std::min(cfg.nearest, cap)};
        SplitMix64 rng(derive_seed(node_seed, seed_stream::sampler, depth));
        const auto children = sample_frontiers(frontiers, loc, sampler, rng);

        double best_score = 0.0, best_gain = 0.0;
        std::optional<size_t> best;
        std::optional<PathResult> best_path;
        for (size_t ci = 0; ci < children.size(); ++ci) {
            auto path = a_star(true_map, mask, loc, children[ci].loc, sensor);
            if (!path) continue;
            const double gain = h1_info_gain(mask, path->temp_mask);
            const double score = cfg.policy_alpha * gain - cfg.policy_beta * path->length();
            if (!best || score > best_score) {
                best = ci;
                best_score = score;
                best_gain = gain;
                best_path = std::move(path);
            }
        }
        if (!best) {
            for (int t = depth; t < cfg.lookahead; ++t) vals[t] = total;
            return vals;
        }
        total += best_gain;
        vals[depth] = total;
        loc = children[*best].loc;
        mask = std::move(best_path->temp_mask);
        node_seed = derive_seed(node_seed, seed_stream::oracle, *best + 1);
    }
    return vals;
}

} // namespace

std::vector<double> oracle_values(const GridMap& true_map, const Mask& temp_mask, Cell fp,
                                  const OracleConfig& cfg, const SensorConfig& sensor,
                                  uint64_t call_seed) {
    cfg.validate();
    if (!temp_mask.in_bounds(fp) || !temp_mask.at(fp))
        throw std::invalid_argument("oracle_values: fp must be explored in temp_mask");
    const uint64_t root = derive_seed(cfg.rng_seed, seed_stream::oracle, call_seed);
    if (cfg.aggregate == OracleConfig::Aggregate::policy)
        return policy_values(true_map, temp_mask, fp, cfg, sensor, root);
    return tree_values(true_map, temp_mask, fp, 0, cfg.lookahead, cfg, sensor, root);
}

double oracle_label(const GridMap& true_map, const Mask& temp_mask, const FrontierPoint& fp,
                    const OracleConfig& cfg, const SensorConfig& sensor, uint64_t call_seed) {
    if (cfg.lookahead == 0) return 0.0;
    const auto vals = oracle_values(true_map, temp_mask, fp.loc, cfg, sensor, call_seed);
    return vals.empty() ? 0.0 : vals.back();
}

} // namespace frontier_lab
