// AVX2 + FMA kernel variants. Compiled with -mavx2 -mfma and reached only
// through the runtime dispatch in kernels.cpp, so the rest of the library can
// be built for a generic x86-64 baseline.

#include "frontier_lab/kernels.hpp"

#include <immintrin.h>

#include <bit>
#include <cstring>
#include <vector>

namespace frontier_lab::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

} // namespace

double dot(const double* a, const double* b, size_t n) {
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    __m256d acc2 = _mm256_setzero_pd();
    __m256d acc3 = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 16 <= n; i += 16) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
        acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 8), _mm256_loadu_pd(b + i + 8), acc2);
        acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 12), _mm256_loadu_pd(b + i + 12), acc3);
    }
    for (; i + 4 <= n; i += 4)
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    double s = hsum(_mm256_add_pd(_mm256_add_pd(acc0, acc1), _mm256_add_pd(acc2, acc3)));
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

void axpy(double alpha, const double* x, double* y, size_t n) {
    const __m256d va = _mm256_set1_pd(alpha);
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
        _mm256_storeu_pd(y + i + 4,
                         _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4)));
    }
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void matvec(const double* a, size_t rows, size_t n, const double* x, double* y) {
    size_t r = 0;
    for (; r + 4 <= rows; r += 4) {
        const double* a0 = a + r * n;
        const double* a1 = a0 + n;
        const double* a2 = a1 + n;
        const double* a3 = a2 + n;
        __m256d acc0 = _mm256_setzero_pd();
        __m256d acc1 = _mm256_setzero_pd();
        __m256d acc2 = _mm256_setzero_pd();
        __m256d acc3 = _mm256_setzero_pd();
        size_t i = 0;
        for (; i + 4 <= n; i += 4) {
            const __m256d vx = _mm256_loadu_pd(x + i);
            acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a0 + i), vx, acc0);
            acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a1 + i), vx, acc1);
            acc2 = _mm256_fmadd_pd(_mm256_loadu_pd(a2 + i), vx, acc2);
            acc3 = _mm256_fmadd_pd(_mm256_loadu_pd(a3 + i), vx, acc3);
        }
        double s0 = hsum(acc0), s1 = hsum(acc1), s2 = hsum(acc2), s3 = hsum(acc3);
        for (; i < n; ++i) {
            s0 += a0[i] * x[i];
            s1 += a1[i] * x[i];
            s2 += a2[i] * x[i];
            s3 += a3[i] * x[i];
        }
        y[r] = s0;
        y[r + 1] = s1;
        y[r + 2] = s2;
        y[r + 3] = s3;
    }
    for (; r < rows; ++r) y[r] = dot(a + r * n, x, n);
}

size_t diff_count(const uint8_t* a, const uint8_t* b, size_t n) {
    size_t d = 0;
    size_t i = 0;
    for (; i + 32 <= n; i += 32) {
        const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        const auto eq = static_cast<uint32_t>(_mm256_movemask_epi8(_mm256_cmpeq_epi8(va, vb)));
        d += 32u - static_cast<unsigned>(std::popcount(eq));
    }
    for (; i < n; ++i) d += a[i] != b[i];
    return d;
}

void sobel_edges(const uint8_t* mask, int size, uint8_t* out) {
    const int L = size;
    // One zero-padded copy: 1-cell halo plus 16 bytes of slack per row so the
    // 16-wide loads near the right edge stay in-bounds and read zeros.
    const size_t stride = static_cast<size_t>(L) + 18;
    std::vector<uint8_t> padded((static_cast<size_t>(L) + 2) * stride, 0);
    for (int r = 0; r < L; ++r)
        std::memcpy(&padded[(static_cast<size_t>(r) + 1) * stride + 1],
                    mask + static_cast<size_t>(r) * L, static_cast<size_t>(L));

    const __m256i zero = _mm256_setzero_si256();
    const __m256i ones16 = _mm256_set1_epi16(1);
    auto ld = [](const uint8_t* p) {
        return _mm256_cvtepu8_epi16(_mm_loadu_si128(reinterpret_cast<const __m128i*>(p)));
    };
    for (int r = 0; r < L; ++r) {
        // padded row pointers start at image column -1
        const uint8_t* top = &padded[static_cast<size_t>(r) * stride];
        const uint8_t* mid = &padded[(static_cast<size_t>(r) + 1) * stride];
        const uint8_t* bot = &padded[(static_cast<size_t>(r) + 2) * stride];
        uint8_t* dst = out + static_cast<size_t>(r) * L;
        for (int c = 0; c < L; c += 16) {
            const __m256i tl = ld(top + c), tm = ld(top + c + 1), tr = ld(top + c + 2);
            const __m256i ml = ld(mid + c), mr = ld(mid + c + 2);
            const __m256i bl = ld(bot + c), bm = ld(bot + c + 1), br = ld(bot + c + 2);
            const __m256i gx = _mm256_sub_epi16(
                _mm256_add_epi16(_mm256_add_epi16(tr, br), _mm256_slli_epi16(mr, 1)),
                _mm256_add_epi16(_mm256_add_epi16(tl, bl), _mm256_slli_epi16(ml, 1)));
            const __m256i gy = _mm256_sub_epi16(
                _mm256_add_epi16(_mm256_add_epi16(bl, br), _mm256_slli_epi16(bm, 1)),
                _mm256_add_epi16(_mm256_add_epi16(tl, tr), _mm256_slli_epi16(tm, 1)));
            const __m256i flat =
                _mm256_and_si256(_mm256_cmpeq_epi16(gx, zero), _mm256_cmpeq_epi16(gy, zero));
            const __m256i edge = _mm256_andnot_si256(flat, ones16);
            const __m128i packed = _mm_packus_epi16(_mm256_castsi256_si128(edge),
                                                    _mm256_extracti128_si256(edge, 1));
            if (c + 16 <= L) {
                _mm_storeu_si128(reinterpret_cast<__m128i*>(dst + c), packed);
            } else {
                alignas(16) uint8_t tmp[16];
                _mm_store_si128(reinterpret_cast<__m128i*>(tmp), packed);
                std::memcpy(dst + c, tmp, static_cast<size_t>(L - c));
            }
        }
    }
}

} // namespace frontier_lab::kernels::avx2
