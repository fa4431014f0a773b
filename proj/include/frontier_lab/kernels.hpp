#pragma once

#include <cstddef>
#include <cstdint>

// Data-parallel inner loops, provided as scalar reference implementations and
// AVX2 variants selected once at startup. The dispatched entry points are what
// the rest of the project calls; the per-ISA namespaces exist so the test
// suite can check the variants against each other on the same inputs.
//
// Selection: FRONTIER_LAB_SIMD=scalar|avx2|auto (default auto). Requesting
// avx2 on a CPU without it falls back to scalar.

namespace frontier_lab::kernels {

enum class Isa { scalar, avx2 };

Isa active_isa();
const char* isa_name(Isa isa);

// sum_i a[i]*b[i]
double dot(const double* a, const double* b, size_t n);
// y[i] += alpha * x[i]
void axpy(double alpha, const double* x, double* y, size_t n);
// y[r] = sum_i a[r*n + i] * x[i], a is rows x n row-major
void matvec(const double* a, size_t rows, size_t n, const double* x, double* y);
// number of positions where a[i] != b[i]
size_t diff_count(const uint8_t* a, const uint8_t* b, size_t n);
// 3x3 Sobel response on a binary image (zero padding); out[i] = 1 where the
// gradient magnitude is nonzero, else 0. out must not alias mask.
void sobel_edges(const uint8_t* mask, int size, uint8_t* out);

namespace scalar {
double dot(const double* a, const double* b, size_t n);
void axpy(double alpha, const double* x, double* y, size_t n);
void matvec(const double* a, size_t rows, size_t n, const double* x, double* y);
size_t diff_count(const uint8_t* a, const uint8_t* b, size_t n);
void sobel_edges(const uint8_t* mask, int size, uint8_t* out);
} // namespace scalar

#if defined(FRONTIER_LAB_HAVE_AVX2)
namespace avx2 {
double dot(const double* a, const double* b, size_t n);
void axpy(double alpha, const double* x, double* y, size_t n);
void matvec(const double* a, size_t rows, size_t n, const double* x, double* y);
size_t diff_count(const uint8_t* a, const uint8_t* b, size_t n);
void sobel_edges(const uint8_t* mask, int size, uint8_t* out);
} // namespace avx2
#endif

} // namespace frontier_lab::kernels
