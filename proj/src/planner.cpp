#include "frontier_lab/planner.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <limits>
#include <stdexcept>

#include <json.hpp>

#include "frontier_lab/common.hpp"
#include "frontier_lab/kernels.hpp"

namespace frontier_lab {

using nlohmann::json;

void PlannerConfig::validate() const {
    if (heuristic.alpha < 0 || heuristic.beta < 0 || heuristic.gamma < 0 || heuristic.delta < 0)
        throw std::invalid_argument("planner: heuristic coefficients must be >= 0");
    if (sampler.nearest > sampler.max_points || sampler.max_points <= 0)
        throw std::invalid_argument("planner: sampler needs 0 <= k <= N, N > 0");
    if (sensor.radius < 1) throw std::invalid_argument("planner: sensor radius must be >= 1");
    if (state_window <= 0) throw std::invalid_argument("planner: state window must be positive");
    const int sources = (heuristic.gamma == 0.0) + (model != nullptr) + oracle_h3.has_value();
    if (sources != 1)
        throw std::invalid_argument(
            "planner: exactly one H3 source (gamma=0, model, or oracle) must be active");
    if (step_budget < 0) throw std::invalid_argument("planner: step budget must be >= 0");
}

std::optional<PlanChoice> plan_step(const GridMap& map_view, const Mask& mask, Cell loc,
                                    const PlannerConfig& cfg, SplitMix64& rng,
                                    const GridMap* true_map, uint64_t step_seed,
                                    std::vector<EvaluatedFrontier>* evaluated) {
    cfg.validate();
    if (!map_view.in_bounds(loc) || map_view.at(loc))
        throw std::invalid_argument("plan_step: loc must be a free cell");
    if (!mask.at(loc)) throw std::invalid_argument("plan_step: loc must be explored");
    if (cfg.oracle_h3 && true_map == nullptr)
        throw std::invalid_argument("plan_step: oracle-H3 mode needs the true map");

    auto points = sobel_frontiers(mask, map_view);
    // the cell the agent stands on is never a travel target
    std::erase_if(points, [&](const FrontierPoint& p) { return p.loc == loc; });
    if (points.empty()) return std::nullopt;
    const auto sampled = sample_frontiers(points, loc, cfg.sampler, rng);

    std::optional<PlanChoice> best;
    double best_score = -std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < sampled.size(); ++i) {
        auto path = a_star(map_view, mask, loc, sampled[i].loc, cfg.sensor);
        if (!path) continue; // unreachable frontier: skip, not fatal
        ScoreBreakdown s;
        s.h1 = h1_info_gain(mask, path->temp_mask);
        s.h2 = path->length();
        if (cfg.heuristic.gamma != 0.0) {
            if (cfg.model) {
                s.h3 = predict(*cfg.model, extract_state(map_view, path->temp_mask, sampled[i].loc,
                                                         cfg.state_window));
            } else {
                s.h3 = oracle_label(*true_map, path->temp_mask, sampled[i], *cfg.oracle_h3,
                                    cfg.sensor, derive_seed(step_seed, seed_stream::oracle, i));
            }
        }
        s.h4 = h4_filters(path->temp_mask, sampled[i].loc, cfg.filters);
        s.total = combine(s.h1, s.h2, s.h3, s.h4, cfg.heuristic);
        if (evaluated) evaluated->push_back({sampled[i], *path, s});
        if (!best || s.total > best_score) { // strict: ties keep the earlier frontier
            best_score = s.total;
            best = PlanChoice{sampled[i], std::move(*path), s};
        }
    }
    return best;
}

namespace {

void sync_view(GridMap& view, const GridMap& true_map, const Mask& mask) {
    // known-occupied = explored AND occupied
    uint8_t* v = view.data();
    const uint8_t* t = true_map.data();
    const uint8_t* m = mask.data();
    for (size_t i = 0; i < view.cell_count(); ++i) v[i] = t[i] & m[i];
}

} // namespace

bool coverage_complete(const GridMap& true_map, Cell start, const Mask& mask) {
    const int L = true_map.size();
    if (true_map.at(start)) throw std::invalid_argument("coverage_complete: start occupied");
    std::vector<uint8_t> seen(static_cast<size_t>(L) * L, 0);
    std::deque<Cell> queue{start};
    seen[true_map.index(start.r, start.c)] = 1;
    const int dr[4] = {-1, 1, 0, 0};
    const int dc[4] = {0, 0, -1, 1};
    while (!queue.empty()) {
        const Cell cur = queue.front();
        queue.pop_front();
        if (!mask.at(cur)) return false;
        for (int k = 0; k < 4; ++k) {
            const Cell nb{cur.r + dr[k], cur.c + dc[k]};
            if (!true_map.in_bounds(nb) || true_map.at(nb)) continue;
            auto& flag = seen[true_map.index(nb.r, nb.c)];
            if (!flag) {
                flag = 1;
                queue.push_back(nb);
            }
        }
    }
    return true;
}

EpisodeResult run_episode(const GridMap& true_map, const PlannerConfig& cfg) {
    cfg.validate();
    const int L = true_map.size();
    const long budget = cfg.step_budget > 0 ? cfg.step_budget : 50L * L * L;

    EpisodeResult ep;
    ep.start = start_cell(true_map);
    AgentState agent{ep.start, 0};
    Mask mask(L);
    mask = scan(true_map, mask, agent.loc, cfg.sensor);
    GridMap view(L);
    sync_view(view, true_map, mask);

    SplitMix64 rng(derive_seed(cfg.seed, seed_stream::episode, 0));
    for (int step_idx = 0; agent.steps_taken < budget; ++step_idx) {
        auto choice = plan_step(view, mask, agent.loc, cfg, rng, &true_map,
                                derive_seed(cfg.seed, seed_stream::oracle, step_idx));
        if (!choice) break;

        StepRecord rec;
        rec.index = step_idx;
        rec.loc = agent.loc;
        rec.frontier = choice->chosen.loc;
        rec.score = choice->score;
        for (Cell next : choice->best_path.path) {
            if (view.at(next)) { // scan along the way exposed a wall on the route
                rec.blocked = true;
                break;
            }
            auto moved = move_agent(true_map, mask, agent, next, cfg.sensor);
            if (!moved) {
                // cannot happen while the sensor covers adjacent cells, but a
                // bump still reveals the obstacle
                mask.set(next, 1);
                sync_view(view, true_map, mask);
                rec.blocked = true;
                break;
            }
            agent = moved->first;
            mask = std::move(moved->second);
            sync_view(view, true_map, mask);
            rec.traversed.push_back(next);
            if (agent.steps_taken >= budget) break;
        }
        ep.trace.push_back(std::move(rec));
    }

    ep.steps = agent.steps_taken;
    ep.completed = coverage_complete(true_map, ep.start, mask);
    ep.budget_exceeded = !ep.completed && agent.steps_taken >= budget;
    ep.final_mask = std::move(mask);
    return ep;
}

// --------------------------------------------------------------------------
// trace IO

namespace {

json cell_json(Cell c) {
    return json::array({c.r, c.c});
}

Cell cell_from(const json& j) {
    return Cell{j.at(0).get<int>(), j.at(1).get<int>()};
}

} // namespace

void write_trace(const std::string& path, const GridMap& true_map, const PlannerConfig& cfg,
                 const EpisodeResult& ep) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write trace: " + path);

    json header{
        {"type", "header"},
        {"version", std::string(kArtifactVersion)},
        {"L", true_map.size()},
        {"map_hash", std::to_string(grid_hash(true_map))},
        {"start", cell_json(ep.start)},
        {"seed", std::to_string(cfg.seed)},
        {"sensor", {{"radius", cfg.sensor.radius}, {"occlusion", cfg.sensor.occlusion}}},
        {"heuristic",
         {{"alpha", cfg.heuristic.alpha},
          {"beta", cfg.heuristic.beta},
          {"gamma", cfg.heuristic.gamma},
          {"delta", cfg.heuristic.delta}}},
        {"sampler", {{"max_points", cfg.sampler.max_points}, {"nearest", cfg.sampler.nearest}}},
        {"state_window", cfg.state_window},
        {"h3_source",
         cfg.model ? "model" : (cfg.oracle_h3 ? "oracle" : "none")},
        {"step_budget", cfg.step_budget},
        {"kernels", kernels::isa_name(kernels::active_isa())},
    };
    out << header.dump() << '\n';

    for (const auto& rec : ep.trace) {
        json path_cells = json::array();
        for (Cell c : rec.traversed) path_cells.push_back(cell_json(c));
        json step{
            {"type", "step"},       {"i", rec.index},
            {"loc", cell_json(rec.loc)},
            {"frontier", cell_json(rec.frontier)},
            {"h1", rec.score.h1},   {"h2", rec.score.h2},
            {"h3", rec.score.h3},   {"h4", rec.score.h4},
            {"H", rec.score.total}, {"path", path_cells},
            {"blocked", rec.blocked},
        };
        out << step.dump() << '\n';
    }

    json end{{"type", "end"},
             {"steps", ep.steps},
             {"completed", ep.completed},
             {"budget_exceeded", ep.budget_exceeded}};
    out << end.dump() << '\n';
    if (!out) throw std::runtime_error("trace write failed: " + path);
}

TraceFile read_trace(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read trace: " + path);
    TraceFile tf;
    std::string line;
    bool have_header = false, have_end = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const json j = json::parse(line);
        const std::string type = j.at("type").get<std::string>();
        if (type == "header") {
            tf.size = j.at("L").get<int>();
            tf.map_hash = std::stoull(j.at("map_hash").get<std::string>());
            tf.start = cell_from(j.at("start"));
            tf.sensor.radius = j.at("sensor").at("radius").get<int>();
            tf.sensor.occlusion = j.at("sensor").at("occlusion").get<bool>();
            tf.seed = std::stoull(j.at("seed").get<std::string>());
            have_header = true;
        } else if (type == "step") {
            StepRecord rec;
            rec.index = j.at("i").get<int>();
            rec.loc = cell_from(j.at("loc"));
            rec.frontier = cell_from(j.at("frontier"));
            rec.score.h1 = j.at("h1").get<double>();
            rec.score.h2 = j.at("h2").get<double>();
            rec.score.h3 = j.at("h3").get<double>();
            rec.score.h4 = j.at("h4").get<double>();
            rec.score.total = j.at("H").get<double>();
            for (const auto& c : j.at("path")) rec.traversed.push_back(cell_from(c));
            rec.blocked = j.at("blocked").get<bool>();
            tf.records.push_back(std::move(rec));
        } else if (type == "end") {
            tf.steps = j.at("steps").get<long>();
            tf.completed = j.at("completed").get<bool>();
            tf.budget_exceeded = j.at("budget_exceeded").get<bool>();
            have_end = true;
        }
    }
    if (!have_header || !have_end) throw std::runtime_error("trace file incomplete: " + path);
    return tf;
}

} // namespace frontier_lab
