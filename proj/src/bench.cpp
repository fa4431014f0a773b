#include "frontier_lab/bench.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "frontier_lab/common.hpp"
#include "frontier_lab/kernels.hpp"

namespace frontier_lab {

using nlohmann::json;

double compute_mu(const std::vector<std::vector<long>>& steps) {
    if (steps.empty()) throw std::invalid_argument("compute_mu: empty matrix");
    double acc = 0.0;
    for (const auto& row : steps) {
        if (row.empty()) throw std::invalid_argument("compute_mu: empty row");
        double m = 0.0;
        for (long v : row) m += static_cast<double>(v);
        acc += m / static_cast<double>(row.size());
    }
    return acc / static_cast<double>(steps.size());
}

double compute_sigma(const std::vector<std::vector<long>>& steps) {
    if (steps.empty()) throw std::invalid_argument("compute_sigma: empty matrix");
    const double mu = compute_mu(steps);
    double acc = 0.0;
    for (const auto& row : steps) {
        if (row.empty()) throw std::invalid_argument("compute_sigma: empty row");
        double m = 0.0;
        for (long v : row) m += static_cast<double>(v);
        m /= static_cast<double>(row.size());
        acc += m * m;
    }
    return acc / static_cast<double>(steps.size()) - mu * mu;
}

double compute_s(double mu_baseline, double mu_variant) {
    if (mu_baseline <= 0.0) throw std::invalid_argument("compute_s: baseline mean must be > 0");
    return (mu_baseline - mu_variant) / mu_baseline * 100.0;
}

uint64_t BenchmarkConfig::map_seed(int size_index, int map_index) const {
    const uint64_t size_stream = derive_seed(suite_seed, seed_stream::suite, size_index);
    return derive_seed(size_stream, seed_stream::map_gen, map_index);
}

uint64_t BenchmarkConfig::episode_seed(int size_index, int map_index, int episode_index) const {
    return derive_seed(map_seed(size_index, map_index), seed_stream::episode, episode_index);
}

BenchmarkResult run_benchmark(const BenchmarkConfig& cfg) {
    if (cfg.maps_per_size < 1 || cfg.episodes_per_map < 1)
        throw std::invalid_argument("run_benchmark: N_M and N_E must be >= 1");
    if (cfg.variants.empty()) throw std::invalid_argument("run_benchmark: no variants");
    if (cfg.sizes.empty()) throw std::invalid_argument("run_benchmark: no map sizes");
    for (const auto& v : cfg.variants) v.planner.validate();

    // identical maps for every variant
    std::vector<std::vector<GridMap>> maps(cfg.sizes.size());
    for (size_t si = 0; si < cfg.sizes.size(); ++si) {
        maps[si].reserve(cfg.maps_per_size);
        for (int mi = 0; mi < cfg.maps_per_size; ++mi)
            maps[si].push_back(generate_map(cfg.sizes[si], cfg.density,
                                            cfg.map_seed(static_cast<int>(si), mi)));
    }

    struct Task {
        size_t variant, size_index;
        int map_index, episode_index;
    };
    std::vector<Task> tasks;
    for (size_t vi = 0; vi < cfg.variants.size(); ++vi)
        for (size_t si = 0; si < cfg.sizes.size(); ++si)
            for (int mi = 0; mi < cfg.maps_per_size; ++mi)
                for (int ei = 0; ei < cfg.episodes_per_map; ++ei)
                    tasks.push_back({vi, si, mi, ei});

    std::vector<EpisodeRow> rows(tasks.size());
    parallel_for(tasks.size(), [&](size_t ti) {
        const Task& t = tasks[ti];
        PlannerConfig pc = cfg.variants[t.variant].planner;
        pc.seed = cfg.episode_seed(static_cast<int>(t.size_index), t.map_index, t.episode_index);
        if (cfg.step_budget > 0) pc.step_budget = cfg.step_budget;
        const EpisodeResult ep = run_episode(maps[t.size_index][t.map_index], pc);
        rows[ti] = EpisodeRow{cfg.variants[t.variant].name,
                              cfg.sizes[t.size_index],
                              cfg.map_seed(static_cast<int>(t.size_index), t.map_index),
                              pc.seed,
                              ep.steps,
                              ep.completed};
    });

    BenchmarkResult result;
    result.rows = std::move(rows);

    // per (variant, size) step matrices, folded in index order
    std::vector<double> baseline_mu(cfg.sizes.size(), 0.0);
    size_t cursor = 0;
    for (size_t vi = 0; vi < cfg.variants.size(); ++vi) {
        for (size_t si = 0; si < cfg.sizes.size(); ++si) {
            std::vector<std::vector<long>> matrix(cfg.maps_per_size);
            for (int mi = 0; mi < cfg.maps_per_size; ++mi)
                for (int ei = 0; ei < cfg.episodes_per_map; ++ei)
                    matrix[mi].push_back(result.rows[cursor++].steps);
            VariantStats st;
            st.variant = cfg.variants[vi].name;
            st.size = cfg.sizes[si];
            st.mu = compute_mu(matrix);
            st.sigma = compute_sigma(matrix);
            if (vi == 0) baseline_mu[si] = st.mu;
            st.s_vs_baseline = compute_s(baseline_mu[si], st.mu);
            result.stats.push_back(std::move(st));
        }
    }
    return result;
}

void write_results_csv(const std::string& path, const BenchmarkResult& result) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write csv: " + path);
    out << "variant,L,map_seed,episode_seed,steps,completed\n";
    for (const auto& r : result.rows) {
        out << r.variant << ',' << r.size << ',' << r.map_seed << ',' << r.episode_seed << ','
            << r.steps << ',' << (r.completed ? "true" : "false") << '\n';
    }
    if (!out) throw std::runtime_error("csv write failed: " + path);
}

namespace {

json variant_json(const BenchVariant& v) {
    return json{{"name", v.name},
                {"alpha", v.planner.heuristic.alpha},
                {"beta", v.planner.heuristic.beta},
                {"gamma", v.planner.heuristic.gamma},
                {"delta", v.planner.heuristic.delta},
                {"h3_source",
                 v.planner.model ? "model" : (v.planner.oracle_h3 ? "oracle" : "none")},
                {"state_window", v.planner.state_window}};
}

} // namespace

void write_summary_json(const std::string& path, const BenchmarkConfig& cfg,
                        const BenchmarkResult& result) {
    json stats = json::array();
    for (const auto& s : result.stats) {
        stats.push_back({{"variant", s.variant},
                         {"L", s.size},
                         {"mu", s.mu},
                         {"sigma", s.sigma},
                         {"s_vs_baseline", s.s_vs_baseline}});
    }
    json flagged = json::array();
    for (const auto& r : result.rows) {
        if (!r.completed)
            flagged.push_back({{"variant", r.variant},
                               {"L", r.size},
                               {"map_seed", std::to_string(r.map_seed)},
                               {"episode_seed", std::to_string(r.episode_seed)},
                               {"steps", r.steps}});
    }
    json variants = json::array();
    for (const auto& v : cfg.variants) variants.push_back(variant_json(v));

    json doc{
        {"version", std::string(kArtifactVersion)},
        {"kernels", kernels::isa_name(kernels::active_isa())},
        {"seed_scheme", "suite->size (stream 8), size->map (stream 1), map->episode (stream 2)"},
        {"config",
         {{"sizes", cfg.sizes},
          {"maps_per_size", cfg.maps_per_size},
          {"episodes_per_map", cfg.episodes_per_map},
          {"density", cfg.density},
          {"suite_seed", std::to_string(cfg.suite_seed)},
          {"step_budget", cfg.step_budget},
          {"variants", variants}}},
        {"stats", stats},
        {"flagged", flagged},
    };
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write summary: " + path);
    out << doc.dump(2) << '\n';
    if (!out) throw std::runtime_error("summary write failed: " + path);
}

BenchmarkResult read_results(const std::string& csv_path, const std::string& json_path) {
    BenchmarkResult result;
    std::ifstream csv(csv_path, std::ios::binary);
    if (!csv) throw std::runtime_error("cannot read csv: " + csv_path);
    std::string line;
    if (!std::getline(csv, line) || line != "variant,L,map_seed,episode_seed,steps,completed")
        throw std::runtime_error("bad csv header: " + csv_path);
    while (std::getline(csv, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        EpisodeRow r;
        std::string field;
        std::getline(ls, r.variant, ',');
        std::getline(ls, field, ',');
        r.size = std::stoi(field);
        std::getline(ls, field, ',');
        r.map_seed = std::stoull(field);
        std::getline(ls, field, ',');
        r.episode_seed = std::stoull(field);
        std::getline(ls, field, ',');
        r.steps = std::stol(field);
        std::getline(ls, field, ',');
        r.completed = field == "true";
        result.rows.push_back(std::move(r));
    }

    std::ifstream js(json_path, std::ios::binary);
    if (!js) throw std::runtime_error("cannot read summary: " + json_path);
    const json doc = json::parse(js);
    for (const auto& s : doc.at("stats")) {
        VariantStats st;
        st.variant = s.at("variant").get<std::string>();
        st.size = s.at("L").get<int>();
        st.mu = s.at("mu").get<double>();
        st.sigma = s.at("sigma").get<double>();
        st.s_vs_baseline = s.at("s_vs_baseline").get<double>();
        result.stats.push_back(std::move(st));
    }
    return result;
}

} // namespace frontier_lab
