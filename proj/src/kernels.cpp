#include "frontier_lab/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <string_view>
#include <vector>

namespace frontier_lab::kernels {

namespace scalar {

double dot(const double* a, const double* b, size_t n) {
    double s = 0.0;
    for (size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy(double alpha, const double* x, double* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void matvec(const double* a, size_t rows, size_t n, const double* x, double* y) {
    for (size_t r = 0; r < rows; ++r) y[r] = dot(a + r * n, x, n);
}

size_t diff_count(const uint8_t* a, const uint8_t* b, size_t n) {
    size_t d = 0;
    for (size_t i = 0; i < n; ++i) d += a[i] != b[i];
    return d;
}

void sobel_edges(const uint8_t* mask, int size, uint8_t* out) {
    const int L = size;
    auto px = [&](int r, int c) -> int {
        if (r < 0 || r >= L || c < 0 || c >= L) return 0; // zero padding
        return mask[static_cast<size_t>(r) * L + c];
    };
    for (int r = 0; r < L; ++r) {
        for (int c = 0; c < L; ++c) {
            const int gx = (px(r - 1, c + 1) + 2 * px(r, c + 1) + px(r + 1, c + 1)) -
                           (px(r - 1, c - 1) + 2 * px(r, c - 1) + px(r + 1, c - 1));
            const int gy = (px(r + 1, c - 1) + 2 * px(r + 1, c) + px(r + 1, c + 1)) -
                           (px(r - 1, c - 1) + 2 * px(r - 1, c) + px(r - 1, c + 1));
            out[static_cast<size_t>(r) * L + c] = (gx != 0 || gy != 0) ? 1 : 0;
        }
    }
}

} // namespace scalar

namespace {

Isa resolve_isa() {
#if defined(FRONTIER_LAB_HAVE_AVX2)
    bool hw = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    bool hw = false;
#endif
    std::string_view req = "auto";
    if (const char* e = std::getenv("FRONTIER_LAB_SIMD")) req = e;
    if (req == "scalar") return Isa::scalar;
    if (req == "avx2") return hw ? Isa::avx2 : Isa::scalar;
    return hw ? Isa::avx2 : Isa::scalar;
}

} // namespace

Isa active_isa() {
    static const Isa isa = resolve_isa();
    return isa;
}

const char* isa_name(Isa isa) {
    switch (isa) {
        case Isa::avx2: return "avx2";
        default: return "scalar";
    }
}

#if defined(FRONTIER_LAB_HAVE_AVX2)
#define FRONTIER_LAB_DISPATCH(fn, ...) \
    (active_isa() == Isa::avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define FRONTIER_LAB_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

double dot(const double* a, const double* b, size_t n) {
    return FRONTIER_LAB_DISPATCH(dot, a, b, n);
}

void axpy(double alpha, const double* x, double* y, size_t n) {
    FRONTIER_LAB_DISPATCH(axpy, alpha, x, y, n);
}

void matvec(const double* a, size_t rows, size_t n, const double* x, double* y) {
    FRONTIER_LAB_DISPATCH(matvec, a, rows, n, x, y);
}

size_t diff_count(const uint8_t* a, const uint8_t* b, size_t n) {
    return FRONTIER_LAB_DISPATCH(diff_count, a, b, n);
}

void sobel_edges(const uint8_t* mask, int size, uint8_t* out) {
    FRONTIER_LAB_DISPATCH(sobel_edges, mask, size, out);
}

} // namespace frontier_lab::kernels
