#include "frontier_lab/render.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "frontier_lab/env.hpp"

namespace frontier_lab {

std::string render_ppm(const GridMap& true_map, const Mask& mask, Cell agent) {
    const int L = true_map.size();
    std::string out = "P3\n" + std::to_string(L) + " " + std::to_string(L) + "\n255\n";
    for (int r = 0; r < L; ++r) {
        for (int c = 0; c < L; ++c) {
            Rgb px = true_map.at(r, c) ? kOccupiedColor
                                       : (mask.at(r, c) ? kExploredColor : kUnexploredColor);
            if (Cell{r, c} == agent) px = kAgentColor;
            out += std::to_string(px.r) + " " + std::to_string(px.g) + " " + std::to_string(px.b);
            out.push_back(c + 1 < L ? ' ' : '\n');
        }
    }
    return out;
}

namespace {

void write_frame(const std::filesystem::path& dir, int index, const std::string& body) {
    char name[32];
    std::snprintf(name, sizeof name, "frame_%06d.ppm", index);
    const auto path = dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write frame: " + path.string());
    out << body;
    if (!out) throw std::runtime_error("frame write failed: " + path.string());
}

} // namespace

int render_frames(const std::string& trace_path, const std::string& map_path,
                  const std::string& out_dir) {
    const TraceFile trace = read_trace(trace_path);
    const MapFile mf = read_map_file(map_path);
    if (grid_hash(mf.map) != trace.map_hash)
        throw std::runtime_error("render: trace was produced on a different map (hash mismatch)");
    if (mf.map.size() != trace.size)
        throw std::runtime_error("render: trace/map size mismatch");

    std::filesystem::create_directories(out_dir);
    Mask mask(mf.map.size());
    mask = scan(mf.map, mask, trace.start, trace.sensor);
    Cell agent = trace.start;
    write_frame(out_dir, 0, render_ppm(mf.map, mask, agent));

    int frame = 1;
    for (const auto& rec : trace.records) {
        for (Cell c : rec.traversed) {
            mask = scan(mf.map, mask, c, trace.sensor);
            agent = c;
        }
        write_frame(out_dir, frame++, render_ppm(mf.map, mask, agent));
    }
    return frame;
}

} // namespace frontier_lab
