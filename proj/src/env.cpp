#include "frontier_lab/env.hpp"

#include <algorithm>
#include <cassert>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "frontier_lab/common.hpp"
#include "frontier_lab/rng.hpp"

namespace frontier_lab {

int sensor_disc_area(const SensorConfig& sensor) {
    const int R = sensor.radius;
    int n = 0;
    for (int dr = -R; dr <= R; ++dr)
        for (int dc = -R; dc <= R; ++dc)
            if (dr * dr + dc * dc <= R * R) ++n;
    return n;
}

GridMap generate_map(int size, double density, uint64_t seed) {
    if (size < 10) throw std::invalid_argument("generate_map: size must be >= 10");
    if (density < 0.0 || density > 1.0)
        throw std::invalid_argument("generate_map: density must be in [0,1]");

    GridMap map(size);
    SplitMix64 rng(derive_seed(seed, seed_stream::map_gen, 0));
    const long target = std::lround(density * size * size);
    const int max_side = std::max(1, size / 10);
    const long attempt_budget = 10L * size;

    long occupied = 0;
    for (long attempt = 0; attempt < attempt_budget && occupied < target; ++attempt) {
        const int h = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(max_side)));
        const int w = 1 + static_cast<int>(rng.below(static_cast<uint64_t>(max_side)));
        const int r0 = static_cast<int>(rng.below(static_cast<uint64_t>(size - h + 1)));
        const int c0 = static_cast<int>(rng.below(static_cast<uint64_t>(size - w + 1)));
        for (int r = r0; r < r0 + h; ++r) {
            for (int c = c0; c < c0 + w; ++c) {
                if (!map.at(r, c)) {
                    map.set(r, c, 1);
                    ++occupied;
                }
            }
        }
    }

    if (occupied == static_cast<long>(map.cell_count()))
        throw MapGenError("generate_map: no free start cell exists");
    return map;
}

Cell start_cell(const GridMap& map) {
    const int L = map.size();
    const Cell center{L / 2, L / 2};
    if (!map.at(center)) return center;
    bool found = false;
    Cell best{};
    long best_d = 0;
    for (int r = 0; r < L; ++r) {
        for (int c = 0; c < L; ++c) {
            if (map.at(r, c)) continue;
            const long d = euclid_sq(center, {r, c});
            if (!found || d < best_d) {
                found = true;
                best = {r, c};
                best_d = d;
            }
        }
    }
    if (!found) throw MapGenError("start_cell: map has no free cell");
    return best;
}

std::vector<Cell> bresenham_line(Cell a, Cell b) {
    std::vector<Cell> pts;
    const int dr = std::abs(b.r - a.r);
    const int dc = std::abs(b.c - a.c);
    const int sr = b.r > a.r ? 1 : -1;
    const int sc = b.c > a.c ? 1 : -1;
    int err = dr - dc;
    Cell p = a;
    for (;;) {
        pts.push_back(p);
        if (p == b) break;
        const int e2 = 2 * err;
        if (e2 > -dc) {
            err -= dc;
            p.r += sr;
        }
        if (e2 < dr) {
            err += dr;
            p.c += sc;
        }
    }
    return pts;
}

Mask scan(const GridMap& map, const Mask& mask, Cell loc, const SensorConfig& sensor) {
    assert(map.size() == mask.size());
    if (!map.in_bounds(loc)) throw std::invalid_argument("scan: loc out of bounds");
    const int L = map.size();
    const int R = sensor.radius;
    Mask out = mask;
    for (int r = std::max(0, loc.r - R); r <= std::min(L - 1, loc.r + R); ++r) {
        for (int c = std::max(0, loc.c - R); c <= std::min(L - 1, loc.c + R); ++c) {
            const Cell target{r, c};
            if (euclid_sq(loc, target) > static_cast<long>(R) * R) continue;
            if (sensor.occlusion && !(target == loc)) {
                bool blocked = false;
                // walk the ray; cells strictly before the target block it
                const auto ray = bresenham_line(loc, target);
                for (size_t i = 1; i + 1 < ray.size(); ++i) {
                    if (map.at(ray[i])) {
                        blocked = true;
                        break;
                    }
                }
                if (blocked) continue;
            }
            out.set(target, 1);
        }
    }
    return out;
}

std::optional<std::pair<AgentState, Mask>> move_agent(const GridMap& map, const Mask& mask,
                                                      const AgentState& agent, Cell target,
                                                      const SensorConfig& sensor) {
    if (manhattan(agent.loc, target) != 1)
        throw std::invalid_argument("move_agent: target is not 4-adjacent");
    if (!map.in_bounds(target)) throw std::invalid_argument("move_agent: target out of bounds");
    if (map.at(target)) return std::nullopt; // blocked
    AgentState next{target, agent.steps_taken + 1};
    return std::make_pair(next, scan(map, mask, target, sensor));
}

std::string map_file_text(const MapFile& mf) {
    std::string s;
    const int L = mf.map.size();
    char num[32];
    auto res = std::to_chars(num, num + sizeof num, mf.density);
    s.append(std::to_string(L));
    s.push_back(' ');
    s.append(num, res.ptr);
    s.push_back(' ');
    s.append(std::to_string(mf.seed));
    s.push_back('\n');
    for (int r = 0; r < L; ++r) {
        for (int c = 0; c < L; ++c) s.push_back(mf.map.at(r, c) ? '1' : '0');
        s.push_back('\n');
    }
    return s;
}

void write_map_file(const std::string& path, const MapFile& mf) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write map file: " + path);
    out << map_file_text(mf);
    if (!out) throw std::runtime_error("write failed: " + path);
}

MapFile read_map_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read map file: " + path);
    std::string header;
    if (!std::getline(in, header)) throw std::runtime_error("map file truncated: " + path);
    std::istringstream hs(header);
    int L = 0;
    std::string density_tok;
    uint64_t seed = 0;
    if (!(hs >> L >> density_tok >> seed) || L <= 0)
        throw std::runtime_error("bad map file header: " + path);
    double density = 0.0;
    auto res = std::from_chars(density_tok.data(), density_tok.data() + density_tok.size(), density);
    if (res.ec != std::errc{}) throw std::runtime_error("bad density in map file: " + path);
    MapFile mf{GridMap(L), density, seed};
    std::string line;
    for (int r = 0; r < L; ++r) {
        if (!std::getline(in, line) || static_cast<int>(line.size()) < L)
            throw std::runtime_error("map file truncated: " + path);
        for (int c = 0; c < L; ++c) {
            if (line[c] == '1')
                mf.map.set(r, c, 1);
            else if (line[c] != '0')
                throw std::runtime_error("bad map cell character: " + path);
        }
    }
    return mf;
}

uint64_t grid_hash(const BinaryGrid& g) {
    const int L = g.size();
    uint64_t h = fnv1a64(&L, sizeof L);
    return fnv1a64(g.data(), g.cell_count(), h);
}

} // namespace frontier_lab
