#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace frontier_lab {

inline constexpr std::string_view kArtifactVersion = "0.1.0";

// FNV-1a 64-bit, used for map / file identity checks in manifests.
constexpr uint64_t fnv1a64(const void* bytes, size_t n, uint64_t h = 0xcbf29ce484222325ull) {
    const auto* p = static_cast<const unsigned char*>(bytes);
    for (size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

uint64_t file_hash(const std::string& path);

// Worker cap: min(hardware_concurrency, FRONTIER_LAB_THREADS). At least 1.
int worker_count();

// Runs fn(i) for i in [0, n) on up to worker_count() threads. Results must be
// written to per-index slots by the callee; the iteration order is unspecified
// but every index runs exactly once, so deterministic outputs only depend on
// fn being a pure function of i.
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

} // namespace frontier_lab
