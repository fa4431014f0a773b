// frontier_lab command line: map generation, rollouts, oracle dataset
// generation, training, benchmarking, and trace rendering.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "frontier_lab/bench.hpp"
#include "frontier_lab/common.hpp"
#include "frontier_lab/datagen.hpp"
#include "frontier_lab/env.hpp"
#include "frontier_lab/kernels.hpp"
#include "frontier_lab/net.hpp"
#include "frontier_lab/planner.hpp"
#include "frontier_lab/render.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace frontier_lab;

namespace {

void write_json_file(const fs::path& path, const json& doc) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << doc.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

void print_config(const json& doc) {
    std::cout << "config: " << doc.dump() << "\n";
}

json sensor_json(const SensorConfig& s) {
    return {{"radius", s.radius}, {"occlusion", s.occlusion}};
}

struct HeuristicFlags {
    double alpha = 1.0, beta = 12.0, gamma = 1.0, delta = 20.0;
    int max_points = 15, nearest = 12;
    int state_window = 40;
    int radius = 3;
    bool no_occlusion = false;
    long budget = 0;

    void add_common(CLI::App* cmd) {
        cmd->add_option("--alpha", alpha, "H1 coefficient");
        cmd->add_option("--beta", beta, "H2 coefficient");
        cmd->add_option("--gamma", gamma, "H3 coefficient");
        cmd->add_option("--delta", delta, "H4 coefficient");
        cmd->add_option("--samples", max_points, "frontier points evaluated per step (N)");
        cmd->add_option("--nearest", nearest, "closest points always kept (k)");
        cmd->add_option("--state-d", state_window, "H3 state window side (d)");
        cmd->add_option("--radius", radius, "sensor radius in cells");
        cmd->add_flag("--no-occlusion", no_occlusion, "sensor sees through walls");
        cmd->add_option("--budget", budget, "step budget (0 = 50*L^2)");
    }

    SensorConfig sensor() const { return {radius, !no_occlusion}; }

    PlannerConfig planner() const {
        PlannerConfig cfg;
        cfg.heuristic = {alpha, beta, gamma, delta};
        cfg.sampler = {max_points, nearest};
        cfg.sensor = sensor();
        cfg.state_window = state_window;
        cfg.step_budget = budget;
        return cfg;
    }

    json to_json() const {
        return {{"alpha", alpha},     {"beta", beta},
                {"gamma", gamma},     {"delta", delta},
                {"samples", max_points}, {"nearest", nearest},
                {"state_d", state_window}, {"sensor", sensor_json(sensor())},
                {"budget", budget}};
    }
};

// ---------------------------------------------------------------- gen-maps

void cmd_gen_maps(int size, double density, uint64_t seed, int count, const std::string& out_dir) {
    fs::create_directories(out_dir);
    // the output path is deliberately not part of the manifest, so two runs
    // into different directories stay byte-identical
    json cfg{{"command", "gen-maps"},
             {"size", size},
             {"density", density},
             {"seed", std::to_string(seed)},
             {"maps", count}};
    print_config(cfg);

    json files = json::array();
    for (int i = 0; i < count; ++i) {
        const uint64_t map_seed = derive_seed(seed, seed_stream::map_gen, i);
        const GridMap map = generate_map(size, density, map_seed);
        char name[32];
        std::snprintf(name, sizeof name, "map_%03d.txt", i);
        const fs::path path = fs::path(out_dir) / name;
        write_map_file(path.string(), {map, density, map_seed});
        files.push_back({{"name", name},
                         {"seed", std::to_string(map_seed)},
                         {"hash", std::to_string(grid_hash(map))}});
    }
    write_json_file(fs::path(out_dir) / "manifest.json",
                    json{{"version", std::string(kArtifactVersion)},
                         {"config", cfg},
                         {"files", files}});
    std::cout << "wrote " << count << " maps to " << out_dir << "\n";
}

// ----------------------------------------------------------------- rollout

void cmd_rollout(const std::string& map_path, int size, double density, uint64_t map_seed,
                 uint64_t seed, const HeuristicFlags& hf, const std::string& model_path,
                 bool oracle_h3, int lookahead, const std::string& out_path) {
    MapFile mf;
    if (!map_path.empty()) {
        mf = read_map_file(map_path);
    } else {
        mf = {generate_map(size, density, map_seed), density, map_seed};
    }

    PlannerConfig cfg = hf.planner();
    cfg.seed = seed;
    if (!model_path.empty() && oracle_h3)
        throw std::invalid_argument("rollout: pass either --model or --oracle-h3, not both");
    if (!model_path.empty()) {
        cfg.model = std::make_shared<ModelWeights>(load_weights(model_path));
    } else if (oracle_h3) {
        OracleConfig oc;
        oc.lookahead = lookahead;
        oc.nearest = hf.nearest;
        oc.rng_seed = seed;
        cfg.oracle_h3 = oc;
    } else if (cfg.heuristic.gamma != 0.0) {
        throw std::invalid_argument(
            "rollout: gamma > 0 needs an H3 source; pass --model FILE, --oracle-h3, or --gamma 0");
    }

    json jcfg{{"command", "rollout"},
              {"map", map_path.empty() ? json{{"size", size},
                                              {"density", density},
                                              {"seed", std::to_string(map_seed)}}
                                       : json(map_path)},
              {"map_hash", std::to_string(grid_hash(mf.map))},
              {"seed", std::to_string(seed)},
              {"heuristics", hf.to_json()},
              {"h3_source", !model_path.empty() ? "model" : (oracle_h3 ? "oracle" : "none")},
              {"lookahead", lookahead},
              {"out", out_path}};
    print_config(jcfg);

    const EpisodeResult ep = run_episode(mf.map, cfg);
    write_trace(out_path, mf.map, cfg, ep);
    std::cout << "steps=" << ep.steps << " planning_steps=" << ep.trace.size()
              << " completed=" << (ep.completed ? "true" : "false")
              << (ep.budget_exceeded ? " budget_exceeded=true" : "") << "\ntrace: " << out_path
              << "\n";
}

// ----------------------------------------------------------------- dataset

void cmd_dataset(int size, double density, int map_count, uint64_t seed, const HeuristicFlags& hf,
                 int lookahead, const std::string& out_path) {
    std::vector<GridMap> maps;
    json map_list = json::array();
    for (int i = 0; i < map_count; ++i) {
        const uint64_t ms = derive_seed(seed, seed_stream::map_gen, i);
        maps.push_back(generate_map(size, density, ms));
        map_list.push_back({{"seed", std::to_string(ms)},
                            {"hash", std::to_string(grid_hash(maps.back()))}});
    }

    HeuristicFlags baseline = hf;
    baseline.gamma = 0.0; // dataset rollouts are always the baseline planner
    baseline.delta = 0.0;
    PlannerConfig rollout = baseline.planner();

    OracleConfig oracle;
    oracle.lookahead = lookahead;
    oracle.nearest = hf.nearest;
    oracle.rng_seed = seed;

    json jcfg{{"command", "dataset"},
              {"size", size},
              {"density", density},
              {"maps", map_count},
              {"seed", std::to_string(seed)},
              {"lookahead", lookahead},
              {"branching", oracle.branching},
              {"rollout", baseline.to_json()},
              {"out", out_path}};
    print_config(jcfg);

    const Dataset ds = generate_dataset(maps, rollout, oracle, hf.sensor(), seed);
    write_dataset(out_path, ds);

    const int label_scale = sensor_disc_area(hf.sensor());
    write_json_file(out_path + ".manifest.json",
                    json{{"version", std::string(kArtifactVersion)},
                         {"config", jcfg},
                         {"maps", map_list},
                         {"records", ds.size()},
                         {"val_records", ds.val_count()},
                         {"label_scale", label_scale},
                         {"dataset_hash", std::to_string(file_hash(out_path))}});
    std::cout << "wrote " << ds.size() << " records (" << ds.val_count() << " validation) to "
              << out_path << "\n";
}

// ------------------------------------------------------------------- train

void cmd_train(const std::string& dataset_path, const std::string& out_path, int epochs,
               int batch, double lr, double momentum, uint64_t seed, double label_scale) {
    const Dataset ds = read_dataset(dataset_path);
    if (label_scale <= 0.0) {
        // default from the dataset manifest, falling back to the default sensor
        label_scale = sensor_disc_area(SensorConfig{});
        const std::string manifest = dataset_path + ".manifest.json";
        if (std::ifstream in{manifest}; in) {
            const json doc = json::parse(in);
            if (doc.contains("label_scale")) label_scale = doc.at("label_scale").get<double>();
        }
    }

    TrainConfig cfg;
    cfg.learning_rate = lr;
    cfg.momentum = momentum;
    cfg.batch_size = batch;
    cfg.epochs = epochs;
    cfg.seed = seed;
    cfg.label_scale = label_scale;

    json jcfg{{"command", "train"},   {"dataset", dataset_path},
              {"epochs", epochs},     {"batch", batch},
              {"lr", lr},             {"momentum", momentum},
              {"seed", std::to_string(seed)}, {"label_scale", label_scale},
              {"out", out_path}};
    print_config(jcfg);

    if (ds.train_count() < static_cast<size_t>(batch))
        throw std::invalid_argument("train: dataset has " + std::to_string(ds.size()) +
                                    " records, fewer than one batch of " + std::to_string(batch));

    const TrainResult result = train(ds, cfg);
    save_weights(out_path, result.weights);

    write_json_file(out_path + ".manifest.json",
                    json{{"version", std::string(kArtifactVersion)},
                         {"config", jcfg},
                         {"dataset_hash", std::to_string(file_hash(dataset_path))},
                         {"records", ds.size()},
                         {"final_train_mse", result.train_mse.back()},
                         {"final_val_mse",
                          result.val_mse.empty() ? json() : json(result.val_mse.back())},
                         {"train_mse", result.train_mse},
                         {"val_mse", result.val_mse}});
    std::cout << "final train MSE " << result.train_mse.back();
    if (!result.val_mse.empty()) std::cout << ", val MSE " << result.val_mse.back();
    std::cout << "\nweights: " << out_path << "\n";
}

// ------------------------------------------------------------------- bench

void cmd_bench(std::vector<int> sizes, int maps, int episodes, double density, uint64_t seed,
               const HeuristicFlags& hf, const std::string& variants_csv,
               const std::string& model_path, int lookahead, const std::string& out_dir) {
    std::shared_ptr<ModelWeights> model;
    auto need_model = [&]() {
        if (!model) {
            if (model_path.empty())
                throw std::invalid_argument("bench: this variant list needs --model FILE");
            model = std::make_shared<ModelWeights>(load_weights(model_path));
        }
        return model;
    };

    BenchmarkConfig cfg;
    cfg.sizes = std::move(sizes);
    cfg.maps_per_size = maps;
    cfg.episodes_per_map = episodes;
    cfg.density = density;
    cfg.suite_seed = seed;
    cfg.step_budget = hf.budget;

    std::stringstream ss(variants_csv);
    std::string name;
    while (std::getline(ss, name, ',')) {
        if (name.empty()) continue;
        BenchVariant v;
        v.name = name;
        v.planner = hf.planner();
        if (name == "baseline") {
            v.planner.heuristic = {1, 15, 0, 0};
        } else if (name == "h3") {
            v.planner.heuristic = {1, 12, 1, 0};
            v.planner.model = need_model();
        } else if (name == "full") {
            v.planner.heuristic = {1, 12, 1, 20};
            v.planner.model = need_model();
        } else if (name == "h3-oracle") {
            v.planner.heuristic = {1, 12, 1, 0};
            OracleConfig oc;
            oc.lookahead = lookahead;
            oc.nearest = hf.nearest;
            oc.rng_seed = seed;
            v.planner.oracle_h3 = oc;
        } else {
            throw std::invalid_argument("bench: unknown variant '" + name +
                                        "' (baseline, h3, full, h3-oracle)");
        }
        cfg.variants.push_back(std::move(v));
    }
    if (cfg.variants.empty()) throw std::invalid_argument("bench: no variants given");

    json jcfg{{"command", "bench"},
              {"sizes", cfg.sizes},
              {"maps", maps},
              {"episodes", episodes},
              {"density", density},
              {"seed", std::to_string(seed)},
              {"variants", variants_csv},
              {"model", model_path},
              {"lookahead", lookahead},
              {"out", out_dir}};
    print_config(jcfg);

    const BenchmarkResult result = run_benchmark(cfg);
    fs::create_directories(out_dir);
    write_results_csv((fs::path(out_dir) / "results.csv").string(), result);
    write_summary_json((fs::path(out_dir) / "summary.json").string(), cfg, result);

    for (const auto& st : result.stats) {
        std::printf("%-12s L=%-4d mu=%9.2f sigma=%12.2f S=%+6.2f%%\n", st.variant.c_str(),
                    st.size, st.mu, st.sigma, st.s_vs_baseline);
    }
    std::cout << "results: " << out_dir << "/results.csv, " << out_dir << "/summary.json\n";
}

// ------------------------------------------------------------------ render

void cmd_render(const std::string& trace_path, const std::string& map_path,
                const std::string& out_dir) {
    json jcfg{
        {"command", "render"}, {"trace", trace_path}, {"map", map_path}, {"out", out_dir}};
    print_config(jcfg);
    const int frames = render_frames(trace_path, map_path, out_dir);
    write_json_file(fs::path(out_dir) / "render_manifest.json",
                    json{{"version", std::string(kArtifactVersion)},
                         {"config", jcfg},
                         {"trace_hash", std::to_string(file_hash(trace_path))},
                         {"map_hash", std::to_string(file_hash(map_path))},
                         {"frames", frames}});
    std::cout << "wrote " << frames << " frames to " << out_dir << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"frontier-based coverage planning laboratory"};
    app.require_subcommand(1);

    // gen-maps
    auto* gen = app.add_subcommand("gen-maps", "generate random occupancy maps");
    int gm_size = 50, gm_count = 10;
    double gm_density = 0.15;
    uint64_t gm_seed = 1;
    std::string gm_out;
    gen->add_option("--size", gm_size, "map side length L");
    gen->add_option("--density", gm_density, "target occupied fraction");
    gen->add_option("--seed", gm_seed, "suite seed");
    gen->add_option("--maps", gm_count, "number of maps");
    gen->add_option("--out", gm_out, "output directory")->required();
    gen->callback([&] { cmd_gen_maps(gm_size, gm_density, gm_seed, gm_count, gm_out); });

    // rollout
    auto* roll = app.add_subcommand("rollout", "run one coverage episode");
    HeuristicFlags roll_hf;
    roll_hf.add_common(roll);
    std::string roll_map, roll_model, roll_out = "episode.trace.jsonl";
    int roll_size = 50, roll_lookahead = 1;
    double roll_density = 0.15;
    uint64_t roll_seed = 1, roll_map_seed = 1;
    bool roll_oracle = false;
    roll->add_option("--map", roll_map, "map file (otherwise generated)");
    roll->add_option("--size", roll_size, "generated map side length");
    roll->add_option("--density", roll_density, "generated map density");
    roll->add_option("--map-seed", roll_map_seed, "generated map seed");
    roll->add_option("--seed", roll_seed, "episode seed");
    roll->add_option("--model", roll_model, "H3 weights file");
    roll->add_flag("--oracle-h3", roll_oracle, "use the clairvoyant oracle as H3 (diagnostic)");
    roll->add_option("--lookahead", roll_lookahead, "oracle look-ahead T");
    roll->add_option("--out", roll_out, "trace output path");
    roll->callback([&] {
        cmd_rollout(roll_map, roll_size, roll_density, roll_map_seed, roll_seed, roll_hf,
                    roll_model, roll_oracle, roll_lookahead, roll_out);
    });

    // dataset
    auto* data = app.add_subcommand("dataset", "generate an oracle-labelled training set");
    HeuristicFlags data_hf;
    data_hf.alpha = 1;
    data_hf.beta = 15; // baseline rollout coefficients
    data_hf.add_common(data);
    int data_size = 50, data_maps = 10, data_lookahead = 1;
    double data_density = 0.15;
    uint64_t data_seed = 1;
    std::string data_out;
    data->add_option("--size", data_size, "map side length");
    data->add_option("--density", data_density, "map density");
    data->add_option("--maps", data_maps, "number of rollout maps");
    data->add_option("--seed", data_seed, "dataset seed");
    data->add_option("--lookahead", data_lookahead, "oracle look-ahead T");
    data->add_option("--out", data_out, "dataset output path")->required();
    data->callback([&] {
        cmd_dataset(data_size, data_density, data_maps, data_seed, data_hf, data_lookahead,
                    data_out);
    });

    // train
    auto* tr = app.add_subcommand("train", "train the H3 regressor");
    std::string tr_dataset, tr_out;
    int tr_epochs = 100, tr_batch = 32;
    double tr_lr = 1e-3, tr_momentum = 0.9, tr_scale = 0.0;
    uint64_t tr_seed = 1;
    tr->add_option("--dataset", tr_dataset, "dataset file")->required();
    tr->add_option("--out", tr_out, "weights output path")->required();
    tr->add_option("--epochs", tr_epochs, "training epochs");
    tr->add_option("--batch", tr_batch, "mini-batch size");
    tr->add_option("--lr", tr_lr, "learning rate");
    tr->add_option("--momentum", tr_momentum, "momentum");
    tr->add_option("--seed", tr_seed, "init/shuffle seed");
    tr->add_option("--label-scale", tr_scale, "label normalization (0 = from manifest)");
    tr->callback([&] {
        cmd_train(tr_dataset, tr_out, tr_epochs, tr_batch, tr_lr, tr_momentum, tr_seed, tr_scale);
    });

    // bench
    auto* be = app.add_subcommand("bench", "paired-seed benchmark over planner variants");
    HeuristicFlags be_hf;
    be_hf.add_common(be);
    std::vector<int> be_sizes{50};
    int be_maps = 10, be_episodes = 5, be_lookahead = 1;
    double be_density = 0.15;
    uint64_t be_seed = 1;
    std::string be_variants = "baseline", be_model, be_out;
    be->add_option("--size", be_sizes, "map side lengths");
    be->add_option("--maps", be_maps, "maps per size (N_M)");
    be->add_option("--episodes", be_episodes, "episodes per map (N_E)");
    be->add_option("--density", be_density, "map density");
    be->add_option("--seed", be_seed, "suite seed");
    be->add_option("--variants", be_variants, "comma list: baseline,h3,full,h3-oracle");
    be->add_option("--model", be_model, "H3 weights file for model variants");
    be->add_option("--lookahead", be_lookahead, "oracle look-ahead for h3-oracle");
    be->add_option("--out", be_out, "output directory")->required();
    be->callback([&] {
        cmd_bench(be_sizes, be_maps, be_episodes, be_density, be_seed, be_hf, be_variants,
                  be_model, be_lookahead, be_out);
    });

    // render
    auto* re = app.add_subcommand("render", "render an episode trace to PPM frames");
    std::string re_trace, re_map, re_out;
    re->add_option("--trace", re_trace, "trace file")->required();
    re->add_option("--map", re_map, "map file")->required();
    re->add_option("--out", re_out, "output directory")->required();
    re->callback([&] { cmd_render(re_trace, re_map, re_out); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage/config problems
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
